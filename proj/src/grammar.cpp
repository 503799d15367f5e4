#include "smtuq/grammar.hpp"

#include <cassert>
#include <sstream>
#include <unordered_map>

namespace smtuq {

bool GrammarSymbol::matches(const Token& tok) const {
  switch (type) {
    case Type::Nonterminal:
      return false;
    case Type::TokenClass:
      return tok.kind == token_class;
    case Type::Literal:
      if (literal == "(") return tok.kind == TokenKind::LParen;
      if (literal == ")") return tok.kind == TokenKind::RParen;
      return tok.kind == TokenKind::Reserved && tok.lexeme == literal;
  }
  return false;
}

std::string GrammarSymbol::display() const {
  switch (type) {
    case Type::Nonterminal:
      return "NT#" + std::to_string(nonterminal);
    case Type::TokenClass:
      return token_kind_name(token_class);
    case Type::Literal:
      return literal;
  }
  return "?";
}

int ConcreteGrammar::nonterminal_index(const std::string& name) const {
  for (std::size_t i = 0; i < nonterminals_.size(); ++i)
    if (nonterminals_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string ConcreteGrammar::to_bnf() const {
  std::ostringstream out;
  for (const Rule& r : rules_) {
    out << nonterminals_[static_cast<std::size_t>(r.lhs)] << " ::=";
    for (const GrammarSymbol& s : r.rhs) {
      out << ' ';
      if (s.type == GrammarSymbol::Type::Nonterminal)
        out << nonterminals_[static_cast<std::size_t>(s.nonterminal)];
      else
        out << s.display();
    }
    out << '\n';
  }
  return out.str();
}

int GrammarBuilder::nt(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(g_.nonterminals_.size());
  g_.nonterminals_.push_back(name);
  index_.emplace(name, id);
  return id;
}

void GrammarBuilder::rule(int lhs, std::vector<GrammarSymbol> rhs) {
  Rule r;
  r.id = static_cast<int>(g_.rules_.size());
  r.lhs = lhs;
  r.rhs = std::move(rhs);
  g_.rules_.push_back(std::move(r));
}

ConcreteGrammar GrammarBuilder::finish(int start) {
  g_.start_ = start;
  g_.by_lhs_.assign(g_.nonterminals_.size(), {});
  for (const Rule& r : g_.rules_)
    g_.by_lhs_[static_cast<std::size_t>(r.lhs)].push_back(r.id);
  return std::move(g_);
}

ConcreteGrammar build_smtlib_grammar() {
  GrammarBuilder b;
  using S = GrammarSymbol;
  const auto sym = S::cls(TokenKind::Symbol);
  const auto num = S::cls(TokenKind::Numeral);
  const auto kw = S::cls(TokenKind::Keyword);
  const auto str = S::cls(TokenKind::String);
  const auto lp = S::lit("(");
  const auto rp = S::lit(")");

  const int Script = b.nt("Script");
  const int Command = b.nt("Command");
  const int Term = b.nt("Term");
  const int TermList = b.nt("TermList");
  const int QualIdentifier = b.nt("QualIdentifier");
  const int SpecConstant = b.nt("SpecConstant");
  const int Sort = b.nt("Sort");
  const int SortList = b.nt("SortList");
  const int SortedVar = b.nt("SortedVar");
  const int SortedVarList = b.nt("SortedVarList");
  const int VarBinding = b.nt("VarBinding");
  const int VarBindingList = b.nt("VarBindingList");
  const int SymbolList = b.nt("SymbolList");
  const int NumeralList = b.nt("NumeralList");
  const int Attribute = b.nt("Attribute");
  const int AttributeList = b.nt("AttributeList");
  const int AttrValue = b.nt("AttrValue");
  const int SortDec = b.nt("SortDec");
  const int SortDecList = b.nt("SortDecList");
  const int DatatypeDec = b.nt("DatatypeDec");
  const int DatatypeDecList = b.nt("DatatypeDecList");
  const int ConstructorDec = b.nt("ConstructorDec");
  const int ConstructorDecList = b.nt("ConstructorDecList");
  const int SelectorDec = b.nt("SelectorDec");
  const int SelectorDecList = b.nt("SelectorDecList");
  const int GenericForm = b.nt("GenericForm");
  const int GenericElem = b.nt("GenericElem");
  const int GenericElemList = b.nt("GenericElemList");

  auto N = [](int i) { return S::nt(i); };

  // Script
  b.rule(Script, {N(Command), N(Script)});
  b.rule(Script, {});

  // Commands
  b.rule(Command, {lp, S::lit("set-logic"), sym, rp});
  b.rule(Command, {lp, S::lit("set-option"), N(Attribute), rp});
  b.rule(Command, {lp, S::lit("set-info"), N(Attribute), rp});
  b.rule(Command, {lp, S::lit("declare-const"), sym, N(Sort), rp});
  b.rule(Command, {lp, S::lit("declare-fun"), sym, lp, rp, N(Sort), rp});
  b.rule(Command, {lp, S::lit("declare-fun"), sym, lp, N(SortList), rp, N(Sort), rp});
  b.rule(Command, {lp, S::lit("declare-sort"), sym, num, rp});
  b.rule(Command, {lp, S::lit("declare-sort"), sym, rp});
  b.rule(Command, {lp, S::lit("define-fun"), sym, lp, rp, N(Sort), N(Term), rp});
  b.rule(Command, {lp, S::lit("define-fun"), sym, lp, N(SortedVarList), rp, N(Sort), N(Term), rp});
  b.rule(Command, {lp, S::lit("define-sort"), sym, lp, rp, N(Sort), rp});
  b.rule(Command, {lp, S::lit("define-sort"), sym, lp, N(SymbolList), rp, N(Sort), rp});
  b.rule(Command, {lp, S::lit("declare-datatype"), sym, N(DatatypeDec), rp});
  b.rule(Command, {lp, S::lit("declare-datatypes"), lp, N(SortDecList), rp, lp, N(DatatypeDecList), rp, rp});
  b.rule(Command, {lp, S::lit("assert"), N(Term), rp});
  b.rule(Command, {lp, S::lit("check-sat"), rp});
  b.rule(Command, {lp, S::lit("get-model"), rp});
  b.rule(Command, {lp, S::lit("get-value"), lp, N(TermList), rp, rp});
  b.rule(Command, {lp, S::lit("push"), num, rp});
  b.rule(Command, {lp, S::lit("push"), rp});
  b.rule(Command, {lp, S::lit("pop"), num, rp});
  b.rule(Command, {lp, S::lit("pop"), rp});
  b.rule(Command, {lp, S::lit("echo"), str, rp});
  b.rule(Command, {lp, S::lit("exit"), rp});
  b.rule(Command, {N(GenericForm)});

  // Terms
  b.rule(Term, {N(SpecConstant)});
  b.rule(Term, {N(QualIdentifier)});
  b.rule(Term, {lp, N(QualIdentifier), N(TermList), rp});
  b.rule(Term, {lp, S::lit("let"), lp, N(VarBindingList), rp, N(Term), rp});
  b.rule(Term, {lp, S::lit("forall"), lp, N(SortedVarList), rp, N(Term), rp});
  b.rule(Term, {lp, S::lit("exists"), lp, N(SortedVarList), rp, N(Term), rp});
  b.rule(Term, {lp, S::lit("!"), N(Term), N(AttributeList), rp});

  b.rule(TermList, {N(Term), N(TermList)});
  b.rule(TermList, {N(Term)});

  b.rule(QualIdentifier, {sym});
  b.rule(QualIdentifier, {lp, S::lit("as"), sym, N(Sort), rp});
  b.rule(QualIdentifier, {lp, S::lit("_"), sym, N(NumeralList), rp});

  b.rule(SpecConstant, {num});
  b.rule(SpecConstant, {S::cls(TokenKind::Decimal)});
  b.rule(SpecConstant, {S::cls(TokenKind::Hexadecimal)});
  b.rule(SpecConstant, {S::cls(TokenKind::Binary)});
  b.rule(SpecConstant, {str});

  // Sorts
  b.rule(Sort, {sym});
  b.rule(Sort, {lp, sym, N(SortList), rp});
  b.rule(Sort, {lp, S::lit("_"), sym, N(NumeralList), rp});

  b.rule(SortList, {N(Sort), N(SortList)});
  b.rule(SortList, {N(Sort)});

  b.rule(SortedVar, {lp, sym, N(Sort), rp});
  b.rule(SortedVarList, {N(SortedVar), N(SortedVarList)});
  b.rule(SortedVarList, {N(SortedVar)});

  b.rule(VarBinding, {lp, sym, N(Term), rp});
  b.rule(VarBindingList, {N(VarBinding), N(VarBindingList)});
  b.rule(VarBindingList, {N(VarBinding)});

  b.rule(SymbolList, {sym, N(SymbolList)});
  b.rule(SymbolList, {sym});

  b.rule(NumeralList, {num, N(NumeralList)});
  b.rule(NumeralList, {num});

  // Attributes
  b.rule(Attribute, {kw, N(AttrValue)});
  b.rule(Attribute, {kw});
  b.rule(AttributeList, {N(Attribute), N(AttributeList)});
  b.rule(AttributeList, {N(Attribute)});
  b.rule(AttrValue, {N(SpecConstant)});
  b.rule(AttrValue, {sym});
  b.rule(AttrValue, {N(GenericForm)});

  // Datatypes
  b.rule(SortDec, {lp, sym, num, rp});
  b.rule(SortDecList, {N(SortDec), N(SortDecList)});
  b.rule(SortDecList, {N(SortDec)});
  b.rule(DatatypeDec, {lp, N(ConstructorDecList), rp});
  b.rule(DatatypeDecList, {N(DatatypeDec), N(DatatypeDecList)});
  b.rule(DatatypeDecList, {N(DatatypeDec)});
  b.rule(ConstructorDec, {lp, sym, rp});
  b.rule(ConstructorDec, {lp, sym, N(SelectorDecList), rp});
  b.rule(ConstructorDecList, {N(ConstructorDec), N(ConstructorDecList)});
  b.rule(ConstructorDecList, {N(ConstructorDec)});
  b.rule(SelectorDec, {lp, sym, N(Sort), rp});
  b.rule(SelectorDecList, {N(SelectorDec), N(SelectorDecList)});
  b.rule(SelectorDecList, {N(SelectorDec)});

  // Unknown commands parse as generic s-expressions instead of failing.
  b.rule(GenericForm, {lp, N(GenericElemList), rp});
  b.rule(GenericElem, {sym});
  b.rule(GenericElem, {kw});
  b.rule(GenericElem, {S::cls(TokenKind::Reserved)});
  b.rule(GenericElem, {N(SpecConstant)});
  b.rule(GenericElem, {N(GenericForm)});
  b.rule(GenericElemList, {N(GenericElem), N(GenericElemList)});
  b.rule(GenericElemList, {N(GenericElem)});

  return b.finish(Script);
}

const ConcreteGrammar& ConcreteGrammar::smtlib() {
  static const ConcreteGrammar g = build_smtlib_grammar();
  return g;
}

}  // namespace smtuq
