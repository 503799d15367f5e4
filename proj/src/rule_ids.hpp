#pragma once

// Rule ids of the fixed SMT-LIB grammar, in build order. Must stay in sync
// with build_smtlib_grammar(); the parser unit tests cross-check against the
// published BNF.

namespace smtuq::rid {

inline constexpr int kScriptCons = 0;
inline constexpr int kScriptEmpty = 1;

inline constexpr int kCmdSetLogic = 2;
inline constexpr int kCmdSetOption = 3;
inline constexpr int kCmdSetInfo = 4;
inline constexpr int kCmdDeclareConst = 5;
inline constexpr int kCmdDeclareFun0 = 6;
inline constexpr int kCmdDeclareFunN = 7;
inline constexpr int kCmdDeclareSortArity = 8;
inline constexpr int kCmdDeclareSort = 9;
inline constexpr int kCmdDefineFun0 = 10;
inline constexpr int kCmdDefineFunN = 11;
inline constexpr int kCmdDefineSort0 = 12;
inline constexpr int kCmdDefineSortN = 13;
inline constexpr int kCmdDeclareDatatype = 14;
inline constexpr int kCmdDeclareDatatypes = 15;
inline constexpr int kCmdAssert = 16;
inline constexpr int kCmdCheckSat = 17;
inline constexpr int kCmdGetModel = 18;
inline constexpr int kCmdGetValue = 19;
inline constexpr int kCmdPushN = 20;
inline constexpr int kCmdPush = 21;
inline constexpr int kCmdPopN = 22;
inline constexpr int kCmdPop = 23;
inline constexpr int kCmdEcho = 24;
inline constexpr int kCmdExit = 25;
inline constexpr int kCmdGeneric = 26;

inline constexpr int kTermConstant = 27;
inline constexpr int kTermQualId = 28;
inline constexpr int kTermApply = 29;
inline constexpr int kTermLet = 30;
inline constexpr int kTermForall = 31;
inline constexpr int kTermExists = 32;
inline constexpr int kTermAnnotated = 33;

inline constexpr int kTermListCons = 34;
inline constexpr int kTermListLast = 35;

inline constexpr int kQualIdSymbol = 36;
inline constexpr int kQualIdAs = 37;
inline constexpr int kQualIdIndexed = 38;

inline constexpr int kConstNumeral = 39;
inline constexpr int kConstDecimal = 40;
inline constexpr int kConstHex = 41;
inline constexpr int kConstBinary = 42;
inline constexpr int kConstString = 43;

inline constexpr int kSortSymbol = 44;
inline constexpr int kSortApply = 45;
inline constexpr int kSortIndexed = 46;

inline constexpr int kSortListCons = 47;
inline constexpr int kSortListLast = 48;

inline constexpr int kSortedVar = 49;
inline constexpr int kSortedVarListCons = 50;
inline constexpr int kSortedVarListLast = 51;

inline constexpr int kVarBinding = 52;
inline constexpr int kVarBindingListCons = 53;
inline constexpr int kVarBindingListLast = 54;

inline constexpr int kSymbolListCons = 55;
inline constexpr int kSymbolListLast = 56;

inline constexpr int kNumeralListCons = 57;
inline constexpr int kNumeralListLast = 58;

inline constexpr int kAttrWithValue = 59;
inline constexpr int kAttrBare = 60;
inline constexpr int kAttrListCons = 61;
inline constexpr int kAttrListLast = 62;
inline constexpr int kAttrValueConstant = 63;
inline constexpr int kAttrValueSymbol = 64;
inline constexpr int kAttrValueGeneric = 65;

inline constexpr int kSortDec = 66;
inline constexpr int kSortDecListCons = 67;
inline constexpr int kSortDecListLast = 68;
inline constexpr int kDatatypeDec = 69;
inline constexpr int kDatatypeDecListCons = 70;
inline constexpr int kDatatypeDecListLast = 71;
inline constexpr int kConstructorDec0 = 72;
inline constexpr int kConstructorDecN = 73;
inline constexpr int kConstructorDecListCons = 74;
inline constexpr int kConstructorDecListLast = 75;
inline constexpr int kSelectorDec = 76;
inline constexpr int kSelectorDecListCons = 77;
inline constexpr int kSelectorDecListLast = 78;

inline constexpr int kGenericForm = 79;
inline constexpr int kGenericElemSymbol = 80;
inline constexpr int kGenericElemKeyword = 81;
inline constexpr int kGenericElemReserved = 82;
inline constexpr int kGenericElemConstant = 83;
inline constexpr int kGenericElemForm = 84;
inline constexpr int kGenericElemListCons = 85;
inline constexpr int kGenericElemListLast = 86;

inline constexpr int kRuleCount = 87;

}  // namespace smtuq::rid
