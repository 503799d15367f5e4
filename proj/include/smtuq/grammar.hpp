#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "smtuq/token.hpp"

namespace smtuq {

// Right-hand-side symbol of a production rule. Terminals are either a token
// class (all symbols, all numerals, ...) or a literal token: a paren or a
// specific reserved word. User symbols are never terminals by lexeme.
struct GrammarSymbol {
  enum class Type { Nonterminal, TokenClass, Literal };
  Type type;
  int nonterminal = -1;                    // Nonterminal
  TokenKind token_class = TokenKind::Symbol;  // TokenClass
  std::string literal;                     // Literal: "(", ")", reserved word

  static GrammarSymbol nt(int index) {
    GrammarSymbol s;
    s.type = Type::Nonterminal;
    s.nonterminal = index;
    return s;
  }
  static GrammarSymbol cls(TokenKind kind) {
    GrammarSymbol s;
    s.type = Type::TokenClass;
    s.token_class = kind;
    return s;
  }
  static GrammarSymbol lit(std::string word) {
    GrammarSymbol s;
    s.type = Type::Literal;
    s.literal = std::move(word);
    return s;
  }

  bool matches(const Token& tok) const;
  std::string display() const;
};

struct Rule {
  int id;
  int lhs;  // nonterminal index
  std::vector<GrammarSymbol> rhs;  // empty = epsilon
};

// The fixed concrete SMT-LIB grammar. Rule ids are dense 0..rules.size()-1
// and stable within a release; the inventory ships as grammar.bnf.
class ConcreteGrammar {
 public:
  const std::vector<std::string>& nonterminals() const { return nonterminals_; }
  const std::vector<Rule>& rules() const { return rules_; }
  int start() const { return start_; }

  const std::string& nonterminal_name(int index) const {
    return nonterminals_.at(static_cast<std::size_t>(index));
  }
  int nonterminal_index(const std::string& name) const;  // -1 when absent

  // Rule ids owned by each nonterminal, in id order.
  const std::vector<std::vector<int>>& rules_by_lhs() const { return by_lhs_; }

  // One rule per line, `<lhs> ::= <sym> ...`; line N (0-based) holds rule N.
  std::string to_bnf() const;

  static const ConcreteGrammar& smtlib();

 private:
  friend class GrammarBuilder;
  std::vector<std::string> nonterminals_;
  std::vector<Rule> rules_;
  std::vector<std::vector<int>> by_lhs_;
  int start_ = 0;
};

// Incremental grammar assembly; rule ids are assigned in insertion order.
class GrammarBuilder {
 public:
  // Index of the named nonterminal, created on first use.
  int nt(const std::string& name);
  void rule(int lhs, std::vector<GrammarSymbol> rhs);
  ConcreteGrammar finish(int start);

 private:
  ConcreteGrammar g_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace smtuq
