#pragma once

// Shared fixtures for the unit and acceptance tests: tiny hand-built
// grammars, a derivation sampler used as an estimation oracle, and a
// rule-probability lookup helper.

#include <random>
#include <stdexcept>
#include <vector>

#include "smtuq/grammar.hpp"
#include "smtuq/parser.hpp"
#include "smtuq/pcfg.hpp"

namespace testutil {

inline smtuq::GrammarSymbol term(const std::string& word) {
  return smtuq::GrammarSymbol::lit(word);
}

// {A -> A A (rule 0), A -> a (rule 1)}
inline smtuq::ConcreteGrammar binary_branching_grammar() {
  smtuq::GrammarBuilder b;
  const int A = b.nt("A");
  b.rule(A, {smtuq::GrammarSymbol::nt(A), smtuq::GrammarSymbol::nt(A)});
  b.rule(A, {term("a")});
  return b.finish(A);
}

// {S -> A (rule 0); A -> a (rule 1)}
inline smtuq::ConcreteGrammar chain_grammar() {
  smtuq::GrammarBuilder b;
  const int S = b.nt("S");
  const int A = b.nt("A");
  b.rule(S, {smtuq::GrammarSymbol::nt(A)});
  b.rule(A, {term("a")});
  return b.finish(S);
}

// Subcritical 6-nonterminal, 14-rule grammar; every rule probability of the
// reference distribution below is >= 0.05.
inline smtuq::ConcreteGrammar six_nt_grammar() {
  smtuq::GrammarBuilder b;
  using S = smtuq::GrammarSymbol;
  const int E = b.nt("E");
  const int T = b.nt("T");
  const int F = b.nt("F");
  const int G = b.nt("G");
  const int H = b.nt("H");
  const int K = b.nt("K");
  b.rule(E, {S::nt(T), term("+"), S::nt(E)});  // 0
  b.rule(E, {S::nt(T)});                       // 1
  b.rule(T, {S::nt(F), term("*"), S::nt(T)});  // 2
  b.rule(T, {S::nt(F)});                       // 3
  b.rule(F, {term("("), S::nt(E), term(")")}); // 4
  b.rule(F, {S::nt(G)});                       // 5
  b.rule(F, {term("x")});                      // 6
  b.rule(G, {S::nt(H)});                       // 7
  b.rule(G, {term("y")});                      // 8
  b.rule(H, {S::nt(K)});                       // 9
  b.rule(H, {term("z")});                      // 10
  b.rule(K, {term("u")});                      // 11
  b.rule(K, {term("v")});                      // 12
  b.rule(K, {term("w")});                      // 13
  return b.finish(E);
}

inline std::vector<double> six_nt_reference_probs() {
  return {0.30, 0.70,          // E
          0.25, 0.75,          // T
          0.20, 0.30, 0.50,    // F
          0.40, 0.60,          // G
          0.35, 0.65,          // H
          0.30, 0.30, 0.40};   // K
}

inline smtuq::Pcfg make_pcfg(const smtuq::ConcreteGrammar& grammar,
                             std::vector<double> probs) {
  smtuq::Pcfg pcfg;
  pcfg.grammar = &grammar;
  pcfg.prob = std::move(probs);
  for (int r = 0; r < static_cast<int>(pcfg.prob.size()); ++r)
    if (pcfg.prob[static_cast<std::size_t>(r)] > 0)
      pcfg.observed_support.insert(r);
  return pcfg;
}

// Leftmost derivation sampler. Returns the applied rules of one derivation;
// derivations exceeding the expansion cap are rejected and resampled.
inline std::vector<smtuq::RuleApplication> sample_derivation(
    const smtuq::Pcfg& pcfg, std::mt19937_64& rng, int max_expansions = 10000) {
  const smtuq::ConcreteGrammar& g = *pcfg.grammar;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<smtuq::RuleApplication> apps;
    std::vector<std::pair<int, int>> stack;  // (nonterminal, depth)
    stack.emplace_back(g.start(), 0);
    bool capped = false;
    while (!stack.empty()) {
      if (static_cast<int>(apps.size()) > max_expansions) {
        capped = true;
        break;
      }
      const auto [nt, depth] = stack.back();
      stack.pop_back();
      const std::vector<int>& options =
          g.rules_by_lhs()[static_cast<std::size_t>(nt)];
      double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      int chosen = options.back();
      for (int rid : options) {
        u -= pcfg.prob[static_cast<std::size_t>(rid)];
        if (u <= 0) {
          chosen = rid;
          break;
        }
      }
      apps.push_back({chosen, "", depth, 0, 0});
      const smtuq::Rule& rule = g.rules()[static_cast<std::size_t>(chosen)];
      for (auto it = rule.rhs.rbegin(); it != rule.rhs.rend(); ++it)
        if (it->type == smtuq::GrammarSymbol::Type::Nonterminal)
          stack.emplace_back(it->nonterminal, depth + 1);
    }
    if (!capped) return apps;
  }
  throw std::runtime_error("derivation sampler kept hitting the expansion cap");
}

}  // namespace testutil
