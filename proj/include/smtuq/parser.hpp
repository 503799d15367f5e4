#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "smtuq/grammar.hpp"
#include "smtuq/token.hpp"

namespace smtuq {

// Internal nodes carry the applied rule; leaves reference a token by index
// into the stream the tree was parsed from.
struct ParseNode {
  int rule_id = -1;      // -1 for leaves
  int nonterminal = -1;  // lhs, internal nodes only
  std::size_t token_index = 0;
  std::vector<ParseNode> children;

  bool is_leaf() const { return rule_id < 0; }
};

struct ParseTree {
  ParseNode root;
  std::string program_id;
  std::size_t token_count = 0;
};

struct RuleApplication {
  int rule_id;
  std::string program_id;
  int depth;               // root = 0
  std::size_t span_begin;  // token indices, inclusive
  std::size_t span_end;
};

// Deterministic LL(2) recursive descent over the fixed SMT-LIB grammar.
// Throws SyntaxError with the offending position and expected symbols.
ParseTree parse_program(const std::vector<Token>& tokens,
                        std::string program_id = "");

// Pre-order listing of applied rules; size equals the internal node count.
std::vector<RuleApplication> extract_rule_applications(const ParseTree& tree);

// Token indices of the leaves, in order. Equals 0..n-1 for a valid tree.
std::vector<std::size_t> terminal_yield(const ParseTree& tree);

}  // namespace smtuq
