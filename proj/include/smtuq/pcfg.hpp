#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "smtuq/grammar.hpp"
#include "smtuq/parser.hpp"

namespace smtuq {

struct RuleCounts {
  std::vector<std::int64_t> per_rule;         // indexed by rule id
  std::vector<std::int64_t> per_nonterminal;  // C(A) = sum over A's rules
  std::int64_t programs_parsed = 0;
  std::int64_t programs_failed = 0;

  std::int64_t total() const;
};

enum class EstimationMethod { MLE, Lidstone, Dirichlet };

struct Pcfg {
  const ConcreteGrammar* grammar = nullptr;
  std::vector<double> prob;  // indexed by rule id; sums to 1 per lhs
  EstimationMethod method = EstimationMethod::MLE;
  double smoothing = 0.0;  // beta_s or alpha for smoothed methods
  std::set<int> observed_support;

  bool observed(int rule_id) const {
    return observed_support.count(rule_id) > 0;
  }
  // Nonterminals with at least one observed rule, ascending index.
  std::vector<int> observed_nonterminals() const;
  // Observed rule ids of A, ascending.
  std::vector<int> observed_rules(int nonterminal) const;

  // `rule_id  lhs ::= rhs  count  probability`, one line per rule.
  std::string report(const RuleCounts& counts) const;
};

struct MeanMatrix {
  std::size_t dim = 0;
  std::vector<double> data;  // row-major; entry(j, i) = expected count of j on i's rhs

  double& at(std::size_t row, std::size_t col) { return data[row * dim + col]; }
  double at(std::size_t row, std::size_t col) const { return data[row * dim + col]; }
  std::string to_csv(const ConcreteGrammar& grammar) const;
};

enum class Consistency { Proper, Improper };

struct ConsistencyResult {
  Consistency verdict;
  double spectral_radius;
};

enum class PiMode { Empirical, FixedPoint };

RuleCounts count_rules(const std::vector<RuleApplication>& applications,
                       const ConcreteGrammar& grammar);

// Merge per-program counts; used when programs are counted separately.
void accumulate(RuleCounts& into, const std::vector<RuleApplication>& applications,
                const ConcreteGrammar& grammar);

Pcfg estimate(const RuleCounts& counts, const ConcreteGrammar& grammar,
              EstimationMethod method, double smoothing = 1.0);

MeanMatrix mean_matrix(const Pcfg& pcfg);

// Largest-modulus eigenvalue of a nonnegative matrix. Power iteration on
// B + I with a deterministic repeated-squaring fallback for small matrices.
double spectral_radius(const MeanMatrix& matrix);

ConsistencyResult check_consistency(const Pcfg& pcfg);

// Normalized nonterminal weights pi over all of V (zeros for unvisited).
std::vector<double> expected_nonterminal_frequencies(const Pcfg& pcfg,
                                                     const RuleCounts& counts,
                                                     PiMode mode);

}  // namespace smtuq
