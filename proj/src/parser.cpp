#include "smtuq/parser.hpp"

#include <sstream>
#include <unordered_set>

#include "rule_ids.hpp"
#include "smtuq/errors.hpp"

namespace smtuq {

namespace {

using namespace rid;

const std::unordered_set<std::string>& command_words() {
  static const std::unordered_set<std::string> words = {
      "set-logic", "set-option", "set-info", "declare-const", "declare-fun",
      "declare-sort", "define-fun", "define-sort", "declare-datatype",
      "declare-datatypes", "assert", "check-sat", "get-model", "get-value",
      "push", "pop", "echo", "exit"};
  return words;
}

bool is_constant_kind(TokenKind k) {
  return k == TokenKind::Numeral || k == TokenKind::Decimal ||
         k == TokenKind::Hexadecimal || k == TokenKind::Binary ||
         k == TokenKind::String;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens)
      : tokens_(tokens), grammar_(ConcreteGrammar::smtlib()) {}

  ParseNode parse_script_to_end() {
    ParseNode root = parse_script();
    if (pos_ < tokens_.size()) fail("{command}");
    return root;
  }

 private:
  const std::vector<Token>& tokens_;
  const ConcreteGrammar& grammar_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
  }
  bool peek_is(TokenKind k, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->kind == k;
  }
  bool peek_reserved(const std::string& word, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->is_reserved(word);
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token* t = peek();
    int line = 0, col = 0;
    std::string found = "end of input";
    if (t) {
      line = t->line;
      col = t->column;
      found = "'" + t->lexeme + "'";
    } else if (!tokens_.empty()) {
      line = tokens_.back().line;
      col = tokens_.back().column + static_cast<int>(tokens_.back().lexeme.size());
    }
    std::ostringstream msg;
    msg << line << ":" << col << ": expected " << expected << ", found " << found;
    throw SyntaxError(msg.str(), pos_, line, col);
  }

  ParseNode leaf() {
    ParseNode n;
    n.token_index = pos_++;
    return n;
  }

  ParseNode node(int rule_id) {
    ParseNode n;
    n.rule_id = rule_id;
    n.nonterminal = grammar_.rules()[static_cast<std::size_t>(rule_id)].lhs;
    return n;
  }

  ParseNode expect_kind(TokenKind kind, const char* what) {
    if (!peek_is(kind)) fail(what);
    return leaf();
  }
  ParseNode expect_lparen() { return expect_kind(TokenKind::LParen, "{(}"); }
  ParseNode expect_rparen() { return expect_kind(TokenKind::RParen, "{)}"); }
  ParseNode expect_symbol() { return expect_kind(TokenKind::Symbol, "{<symbol>}"); }
  ParseNode expect_numeral() { return expect_kind(TokenKind::Numeral, "{<numeral>}"); }

  // Script ::= Command Script | <empty>
  ParseNode parse_script() {
    if (at_end()) return node(kScriptEmpty);
    ParseNode n = node(kScriptCons);
    n.children.push_back(parse_command());
    n.children.push_back(parse_script());
    return n;
  }

  ParseNode parse_command() {
    if (!peek_is(TokenKind::LParen)) fail("{command}");
    const Token* head = peek(1);
    if (!head) fail("{command}");
    if (head->kind == TokenKind::Reserved && command_words().count(head->lexeme))
      return parse_known_command(head->lexeme);
    ParseNode n = node(kCmdGeneric);
    n.children.push_back(parse_generic_form());
    return n;
  }

  ParseNode parse_known_command(const std::string& word) {
    if (word == "set-logic") {
      ParseNode n = node(kCmdSetLogic);
      n.children.push_back(leaf());  // (
      n.children.push_back(leaf());  // set-logic
      n.children.push_back(expect_symbol());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "set-option" || word == "set-info") {
      ParseNode n = node(word == "set-option" ? kCmdSetOption : kCmdSetInfo);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(parse_attribute());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "declare-const") {
      ParseNode n = node(kCmdDeclareConst);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_symbol());
      n.children.push_back(parse_sort());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "declare-fun") {
      // Two tokens in, then the argument sort list decides the arity rule.
      std::size_t mark = pos_;
      pos_ += 2;
      ParseNode name = expect_symbol();
      ParseNode open = expect_lparen();
      const bool empty = peek_is(TokenKind::RParen);
      ParseNode n = node(empty ? kCmdDeclareFun0 : kCmdDeclareFunN);
      n.children.push_back(ParseNode{-1, -1, mark, {}});
      n.children.push_back(ParseNode{-1, -1, mark + 1, {}});
      n.children.push_back(std::move(name));
      n.children.push_back(std::move(open));
      if (!empty) n.children.push_back(parse_sort_list());
      n.children.push_back(expect_rparen());
      n.children.push_back(parse_sort());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "declare-sort") {
      std::size_t mark = pos_;
      pos_ += 2;
      ParseNode name = expect_symbol();
      const bool arity = peek_is(TokenKind::Numeral);
      ParseNode n = node(arity ? kCmdDeclareSortArity : kCmdDeclareSort);
      n.children.push_back(ParseNode{-1, -1, mark, {}});
      n.children.push_back(ParseNode{-1, -1, mark + 1, {}});
      n.children.push_back(std::move(name));
      if (arity) n.children.push_back(expect_numeral());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "define-fun") {
      std::size_t mark = pos_;
      pos_ += 2;
      ParseNode name = expect_symbol();
      ParseNode open = expect_lparen();
      const bool empty = peek_is(TokenKind::RParen);
      ParseNode n = node(empty ? kCmdDefineFun0 : kCmdDefineFunN);
      n.children.push_back(ParseNode{-1, -1, mark, {}});
      n.children.push_back(ParseNode{-1, -1, mark + 1, {}});
      n.children.push_back(std::move(name));
      n.children.push_back(std::move(open));
      if (!empty) n.children.push_back(parse_sorted_var_list());
      n.children.push_back(expect_rparen());
      n.children.push_back(parse_sort());
      n.children.push_back(parse_term());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "define-sort") {
      std::size_t mark = pos_;
      pos_ += 2;
      ParseNode name = expect_symbol();
      ParseNode open = expect_lparen();
      const bool empty = peek_is(TokenKind::RParen);
      ParseNode n = node(empty ? kCmdDefineSort0 : kCmdDefineSortN);
      n.children.push_back(ParseNode{-1, -1, mark, {}});
      n.children.push_back(ParseNode{-1, -1, mark + 1, {}});
      n.children.push_back(std::move(name));
      n.children.push_back(std::move(open));
      if (!empty) n.children.push_back(parse_symbol_list());
      n.children.push_back(expect_rparen());
      n.children.push_back(parse_sort());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "declare-datatype") {
      ParseNode n = node(kCmdDeclareDatatype);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_symbol());
      n.children.push_back(parse_datatype_dec());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "declare-datatypes") {
      ParseNode n = node(kCmdDeclareDatatypes);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_lparen());
      n.children.push_back(parse_sort_dec_list());
      n.children.push_back(expect_rparen());
      n.children.push_back(expect_lparen());
      n.children.push_back(parse_datatype_dec_list());
      n.children.push_back(expect_rparen());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "assert") {
      ParseNode n = node(kCmdAssert);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(parse_term());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "check-sat" || word == "get-model" || word == "exit") {
      int id = word == "check-sat" ? kCmdCheckSat
               : word == "get-model" ? kCmdGetModel
                                     : kCmdExit;
      ParseNode n = node(id);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "get-value") {
      ParseNode n = node(kCmdGetValue);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_lparen());
      n.children.push_back(parse_term_list());
      n.children.push_back(expect_rparen());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "push" || word == "pop") {
      std::size_t mark = pos_;
      pos_ += 2;
      const bool with_numeral = peek_is(TokenKind::Numeral);
      int id = word == "push" ? (with_numeral ? kCmdPushN : kCmdPush)
                              : (with_numeral ? kCmdPopN : kCmdPop);
      ParseNode n = node(id);
      n.children.push_back(ParseNode{-1, -1, mark, {}});
      n.children.push_back(ParseNode{-1, -1, mark + 1, {}});
      if (with_numeral) n.children.push_back(expect_numeral());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (word == "echo") {
      ParseNode n = node(kCmdEcho);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_kind(TokenKind::String, "{<string>}"));
      n.children.push_back(expect_rparen());
      return n;
    }
    fail("{command}");
  }

  ParseNode parse_term() {
    const Token* t = peek();
    if (!t) fail("{term}");
    if (is_constant_kind(t->kind)) {
      ParseNode n = node(kTermConstant);
      n.children.push_back(parse_spec_constant());
      return n;
    }
    if (t->kind == TokenKind::Symbol) {
      ParseNode n = node(kTermQualId);
      n.children.push_back(parse_qual_identifier());
      return n;
    }
    if (t->kind == TokenKind::LParen) {
      if (peek_reserved("let", 1)) return parse_binder(kTermLet);
      if (peek_reserved("forall", 1)) return parse_binder(kTermForall);
      if (peek_reserved("exists", 1)) return parse_binder(kTermExists);
      if (peek_reserved("!", 1)) {
        ParseNode n = node(kTermAnnotated);
        n.children.push_back(leaf());
        n.children.push_back(leaf());
        n.children.push_back(parse_term());
        n.children.push_back(parse_attribute_list());
        n.children.push_back(expect_rparen());
        return n;
      }
      if (peek_reserved("as", 1) || peek_reserved("_", 1)) {
        ParseNode n = node(kTermQualId);
        n.children.push_back(parse_qual_identifier());
        return n;
      }
      ParseNode n = node(kTermApply);
      n.children.push_back(leaf());
      n.children.push_back(parse_qual_identifier());
      n.children.push_back(parse_term_list());
      n.children.push_back(expect_rparen());
      return n;
    }
    fail("{term}");
  }

  ParseNode parse_binder(int rule_id) {
    ParseNode n = node(rule_id);
    n.children.push_back(leaf());  // (
    n.children.push_back(leaf());  // let/forall/exists
    n.children.push_back(expect_lparen());
    n.children.push_back(rule_id == kTermLet ? parse_var_binding_list()
                                             : parse_sorted_var_list());
    n.children.push_back(expect_rparen());
    n.children.push_back(parse_term());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_term_list() {
    ParseNode first = parse_term();
    const bool more = !at_end() && !peek_is(TokenKind::RParen);
    ParseNode n = node(more ? kTermListCons : kTermListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_term_list());
    return n;
  }

  ParseNode parse_qual_identifier() {
    if (peek_is(TokenKind::Symbol)) {
      ParseNode n = node(kQualIdSymbol);
      n.children.push_back(leaf());
      return n;
    }
    if (peek_is(TokenKind::LParen) && peek_reserved("as", 1)) {
      ParseNode n = node(kQualIdAs);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_symbol());
      n.children.push_back(parse_sort());
      n.children.push_back(expect_rparen());
      return n;
    }
    if (peek_is(TokenKind::LParen) && peek_reserved("_", 1)) {
      ParseNode n = node(kQualIdIndexed);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_symbol());
      n.children.push_back(parse_numeral_list());
      n.children.push_back(expect_rparen());
      return n;
    }
    fail("{identifier}");
  }

  ParseNode parse_spec_constant() {
    const Token* t = peek();
    if (!t) fail("{constant}");
    int id;
    switch (t->kind) {
      case TokenKind::Numeral: id = kConstNumeral; break;
      case TokenKind::Decimal: id = kConstDecimal; break;
      case TokenKind::Hexadecimal: id = kConstHex; break;
      case TokenKind::Binary: id = kConstBinary; break;
      case TokenKind::String: id = kConstString; break;
      default: fail("{constant}");
    }
    ParseNode n = node(id);
    n.children.push_back(leaf());
    return n;
  }

  ParseNode parse_sort() {
    if (peek_is(TokenKind::Symbol)) {
      ParseNode n = node(kSortSymbol);
      n.children.push_back(leaf());
      return n;
    }
    if (peek_is(TokenKind::LParen)) {
      if (peek_reserved("_", 1)) {
        ParseNode n = node(kSortIndexed);
        n.children.push_back(leaf());
        n.children.push_back(leaf());
        n.children.push_back(expect_symbol());
        n.children.push_back(parse_numeral_list());
        n.children.push_back(expect_rparen());
        return n;
      }
      ParseNode n = node(kSortApply);
      n.children.push_back(leaf());
      n.children.push_back(expect_symbol());
      n.children.push_back(parse_sort_list());
      n.children.push_back(expect_rparen());
      return n;
    }
    fail("{sort}");
  }

  ParseNode parse_sort_list() {
    ParseNode first = parse_sort();
    const bool more = !at_end() && !peek_is(TokenKind::RParen);
    ParseNode n = node(more ? kSortListCons : kSortListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_sort_list());
    return n;
  }

  ParseNode parse_sorted_var() {
    ParseNode n = node(kSortedVar);
    n.children.push_back(expect_lparen());
    n.children.push_back(expect_symbol());
    n.children.push_back(parse_sort());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_sorted_var_list() {
    ParseNode first = parse_sorted_var();
    const bool more = peek_is(TokenKind::LParen);
    ParseNode n = node(more ? kSortedVarListCons : kSortedVarListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_sorted_var_list());
    return n;
  }

  ParseNode parse_var_binding() {
    ParseNode n = node(kVarBinding);
    n.children.push_back(expect_lparen());
    n.children.push_back(expect_symbol());
    n.children.push_back(parse_term());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_var_binding_list() {
    ParseNode first = parse_var_binding();
    const bool more = peek_is(TokenKind::LParen);
    ParseNode n = node(more ? kVarBindingListCons : kVarBindingListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_var_binding_list());
    return n;
  }

  ParseNode parse_symbol_list() {
    ParseNode first = expect_symbol();
    const bool more = peek_is(TokenKind::Symbol);
    ParseNode n = node(more ? kSymbolListCons : kSymbolListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_symbol_list());
    return n;
  }

  ParseNode parse_numeral_list() {
    ParseNode first = expect_numeral();
    const bool more = peek_is(TokenKind::Numeral);
    ParseNode n = node(more ? kNumeralListCons : kNumeralListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_numeral_list());
    return n;
  }

  ParseNode parse_attribute() {
    ParseNode key = expect_kind(TokenKind::Keyword, "{<keyword>}");
    const Token* t = peek();
    const bool with_value =
        t && (t->kind == TokenKind::Symbol || t->kind == TokenKind::LParen ||
              is_constant_kind(t->kind));
    ParseNode n = node(with_value ? kAttrWithValue : kAttrBare);
    n.children.push_back(std::move(key));
    if (with_value) n.children.push_back(parse_attr_value());
    return n;
  }

  ParseNode parse_attribute_list() {
    ParseNode first = parse_attribute();
    const bool more = peek_is(TokenKind::Keyword);
    ParseNode n = node(more ? kAttrListCons : kAttrListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_attribute_list());
    return n;
  }

  ParseNode parse_attr_value() {
    const Token* t = peek();
    if (!t) fail("{attribute value}");
    if (is_constant_kind(t->kind)) {
      ParseNode n = node(kAttrValueConstant);
      n.children.push_back(parse_spec_constant());
      return n;
    }
    if (t->kind == TokenKind::Symbol) {
      ParseNode n = node(kAttrValueSymbol);
      n.children.push_back(leaf());
      return n;
    }
    if (t->kind == TokenKind::LParen) {
      ParseNode n = node(kAttrValueGeneric);
      n.children.push_back(parse_generic_form());
      return n;
    }
    fail("{attribute value}");
  }

  ParseNode parse_sort_dec() {
    ParseNode n = node(kSortDec);
    n.children.push_back(expect_lparen());
    n.children.push_back(expect_symbol());
    n.children.push_back(expect_numeral());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_sort_dec_list() {
    ParseNode first = parse_sort_dec();
    const bool more = peek_is(TokenKind::LParen);
    ParseNode n = node(more ? kSortDecListCons : kSortDecListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_sort_dec_list());
    return n;
  }

  ParseNode parse_datatype_dec() {
    ParseNode n = node(kDatatypeDec);
    n.children.push_back(expect_lparen());
    n.children.push_back(parse_constructor_dec_list());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_datatype_dec_list() {
    ParseNode first = parse_datatype_dec();
    const bool more = peek_is(TokenKind::LParen);
    ParseNode n = node(more ? kDatatypeDecListCons : kDatatypeDecListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_datatype_dec_list());
    return n;
  }

  ParseNode parse_constructor_dec() {
    ParseNode open = expect_lparen();
    ParseNode name = expect_symbol();
    const bool selectors = peek_is(TokenKind::LParen);
    ParseNode n = node(selectors ? kConstructorDecN : kConstructorDec0);
    n.children.push_back(std::move(open));
    n.children.push_back(std::move(name));
    if (selectors) n.children.push_back(parse_selector_dec_list());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_constructor_dec_list() {
    ParseNode first = parse_constructor_dec();
    const bool more = peek_is(TokenKind::LParen);
    ParseNode n = node(more ? kConstructorDecListCons : kConstructorDecListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_constructor_dec_list());
    return n;
  }

  ParseNode parse_selector_dec() {
    ParseNode n = node(kSelectorDec);
    n.children.push_back(expect_lparen());
    n.children.push_back(expect_symbol());
    n.children.push_back(parse_sort());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_selector_dec_list() {
    ParseNode first = parse_selector_dec();
    const bool more = peek_is(TokenKind::LParen);
    ParseNode n = node(more ? kSelectorDecListCons : kSelectorDecListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_selector_dec_list());
    return n;
  }

  ParseNode parse_generic_form() {
    ParseNode n = node(kGenericForm);
    n.children.push_back(expect_lparen());
    if (peek_is(TokenKind::RParen)) fail("{form element}");
    n.children.push_back(parse_generic_elem_list());
    n.children.push_back(expect_rparen());
    return n;
  }

  ParseNode parse_generic_elem() {
    const Token* t = peek();
    if (!t) fail("{form element}");
    if (t->kind == TokenKind::Symbol) {
      ParseNode n = node(kGenericElemSymbol);
      n.children.push_back(leaf());
      return n;
    }
    if (t->kind == TokenKind::Keyword) {
      ParseNode n = node(kGenericElemKeyword);
      n.children.push_back(leaf());
      return n;
    }
    if (t->kind == TokenKind::Reserved) {
      ParseNode n = node(kGenericElemReserved);
      n.children.push_back(leaf());
      return n;
    }
    if (is_constant_kind(t->kind)) {
      ParseNode n = node(kGenericElemConstant);
      n.children.push_back(parse_spec_constant());
      return n;
    }
    if (t->kind == TokenKind::LParen) {
      ParseNode n = node(kGenericElemForm);
      n.children.push_back(parse_generic_form());
      return n;
    }
    fail("{form element}");
  }

  ParseNode parse_generic_elem_list() {
    ParseNode first = parse_generic_elem();
    const bool more = !at_end() && !peek_is(TokenKind::RParen);
    ParseNode n = node(more ? kGenericElemListCons : kGenericElemListLast);
    n.children.push_back(std::move(first));
    if (more) n.children.push_back(parse_generic_elem_list());
    return n;
  }
};

void collect_applications(const ParseNode& node, const std::string& program_id,
                          int depth, std::size_t& cursor,
                          std::vector<RuleApplication>& out) {
  if (node.is_leaf()) {
    cursor = node.token_index + 1;
    return;
  }
  const std::size_t begin = cursor;
  const std::size_t slot = out.size();
  out.push_back({node.rule_id, program_id, depth, begin, begin});
  for (const ParseNode& child : node.children)
    collect_applications(child, program_id, depth + 1, cursor, out);
  if (cursor > begin) {
    out[slot].span_end = cursor - 1;
  } else {
    // Empty production: anchor the zero-width span on the previous token.
    const std::size_t anchor = begin > 0 ? begin - 1 : 0;
    out[slot].span_begin = anchor;
    out[slot].span_end = anchor;
  }
}

void collect_yield(const ParseNode& node, std::vector<std::size_t>& out) {
  if (node.is_leaf()) {
    out.push_back(node.token_index);
    return;
  }
  for (const ParseNode& child : node.children) collect_yield(child, out);
}

}  // namespace

ParseTree parse_program(const std::vector<Token>& tokens,
                        std::string program_id) {
  Parser parser(tokens);
  ParseTree tree;
  tree.root = parser.parse_script_to_end();
  tree.program_id = std::move(program_id);
  tree.token_count = tokens.size();
  return tree;
}

std::vector<RuleApplication> extract_rule_applications(const ParseTree& tree) {
  std::vector<RuleApplication> out;
  std::size_t cursor = 0;
  collect_applications(tree.root, tree.program_id, 0, cursor, out);
  return out;
}

std::vector<std::size_t> terminal_yield(const ParseTree& tree) {
  std::vector<std::size_t> out;
  collect_yield(tree.root, out);
  return out;
}

}  // namespace smtuq
