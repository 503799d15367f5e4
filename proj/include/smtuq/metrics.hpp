#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smtuq/consistency.hpp"
#include "smtuq/pcfg.hpp"

namespace smtuq {

// Per-question uncertainty metric values. Optional entries stay empty when
// their inputs are absent (token records, answer channels).
struct MetricVector {
  double grammar_entropy = 0.0;  // bits
  double perplexity = 1.0;
  double kl_divergence_uniform = 0.0;
  double nsui = 0.0;
  double renyi_entropy_2 = 0.0;
  double renyi_entropy_05 = 0.0;
  double max_entropy = 0.0;
  double entropy_ratio = 0.0;
  double spectral_factor = 0.0;
  double spectral_radius = 0.0;
  double min_entropy = 0.0;  // verbose output only; not a CSV column
  int num_nonterminals = 0;
  int num_rules = 0;
  double avg_rules_per_nt = 0.0;
  double avg_rhs_len = 0.0;
  int max_branching_factor = 0;
  double rule_dist_mean = 0.0;
  double rule_dist_std = 0.0;
  double rule_dist_skew = 0.0;
  double rule_dist_kurtosis = 0.0;
  std::optional<double> token_entropy;
  std::optional<double> token_perplexity;
  std::optional<double> token_kurtosis;
  std::optional<double> self_consistency_text;
  std::optional<double> self_consistency_smt;
};

// Column order of the per-question CSV; names match the field names.
const std::vector<std::string>& metric_column_names();
std::optional<double> metric_value(const MetricVector& mv, const std::string& column);

// Shannon entropy of A's rule choice over observed rules, with smoothed
// probabilities renormalized to the observed support.
double shannon_entropy_nt(const Pcfg& pcfg, int nonterminal);

// alpha = 1 routes to Shannon; alpha = infinity handled via a large alpha
// guard in callers (min_entropy uses the closed form).
double renyi_entropy_nt(const Pcfg& pcfg, int nonterminal, double alpha);
double min_entropy_nt(const Pcfg& pcfg, int nonterminal);

struct GrammarEntropies {
  double grammar_entropy;
  double perplexity;
  double max_entropy;
  double entropy_ratio;
  double kl_divergence_uniform;
};

// pi is indexed over all of V; mass outside the observed nonterminals
// raises WeightMismatch. Weights are renormalized over observed support.
GrammarEntropies grammar_level_entropies(const Pcfg& pcfg,
                                         const std::vector<double>& pi);

struct NsuiResult {
  double nsui;
  double spectral_factor;
};
NsuiResult nsui(double entropy_ratio, double rho);

struct StructuralMetrics {
  int num_nonterminals;
  int num_rules;
  double avg_rules_per_nt;
  double avg_rhs_len;
  int max_branching_factor;
};
StructuralMetrics structural_metrics(const Pcfg& pcfg);

struct RuleDistributionStats {
  double mean, stddev, skewness, kurtosis;  // population moments, excess kurtosis
  double median, min, max;
};
RuleDistributionStats rule_distribution_stats(const Pcfg& pcfg);

struct TokenRecord {
  std::vector<double> chosen_logprobs;          // natural log, <= 0
  std::vector<std::vector<double>> topk_probs;  // optional per-token top-k
  bool has_data() const { return !chosen_logprobs.empty(); }
};

struct TokenBaselines {
  std::optional<double> entropy;  // bits; absent without top-k data
  double perplexity;
  double kurtosis;
};
TokenBaselines token_level_baselines(const std::vector<TokenRecord>& records);

struct EnsembleContext {
  const ConcreteGrammar* grammar = nullptr;
  std::vector<std::vector<RuleApplication>> parsed_programs;
  std::size_t failed_count = 0;
  std::vector<TokenRecord> token_records;
  std::vector<std::optional<AnswerLabel>> text_answers;
  std::vector<std::optional<AnswerLabel>> smt_answers;
};

struct MetricOptions {
  EstimationMethod method = EstimationMethod::Lidstone;
  double smoothing = 1.0;
  PiMode pi_mode = PiMode::Empirical;
};

MetricVector compute_metric_vector(const EnsembleContext& context,
                                   const MetricOptions& options);

}  // namespace smtuq
