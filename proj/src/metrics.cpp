#include "smtuq/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "smtuq/errors.hpp"

namespace smtuq {

namespace {

std::vector<double> observed_probs(const Pcfg& pcfg, int nonterminal) {
  if (nonterminal < 0 ||
      static_cast<std::size_t>(nonterminal) >= pcfg.grammar->nonterminals().size())
    throw UnknownNonterminal("#" + std::to_string(nonterminal));
  const std::vector<int> rules = pcfg.observed_rules(nonterminal);
  if (rules.empty())
    throw UnknownNonterminal(pcfg.grammar->nonterminal_name(nonterminal) +
                             " (no observed rules)");
  std::vector<double> p;
  p.reserve(rules.size());
  double total = 0.0;
  for (int r : rules) {
    p.push_back(pcfg.prob[static_cast<std::size_t>(r)]);
    total += p.back();
  }
  for (double& x : p) x /= total;
  return p;
}

struct Moments {
  double mean = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

Moments central_moments(const std::vector<double>& xs) {
  Moments m;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= n;
  for (double x : xs) {
    const double d = x - m.mean;
    m.m2 += d * d;
    m.m3 += d * d * d;
    m.m4 += d * d * d * d;
  }
  m.m2 /= n;
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

}  // namespace

const std::vector<std::string>& metric_column_names() {
  static const std::vector<std::string> names = {
      "grammar_entropy", "perplexity", "kl_divergence_uniform", "nsui",
      "renyi_entropy_2", "renyi_entropy_05", "max_entropy", "entropy_ratio",
      "spectral_factor", "spectral_radius", "num_nonterminals", "num_rules",
      "avg_rules_per_nt", "avg_rhs_len", "max_branching_factor",
      "rule_dist_mean", "rule_dist_std", "rule_dist_skew", "rule_dist_kurtosis",
      "token_entropy", "token_perplexity", "token_kurtosis",
      "self_consistency_text", "self_consistency_smt"};
  return names;
}

std::optional<double> metric_value(const MetricVector& mv, const std::string& column) {
  if (column == "grammar_entropy") return mv.grammar_entropy;
  if (column == "perplexity") return mv.perplexity;
  if (column == "kl_divergence_uniform") return mv.kl_divergence_uniform;
  if (column == "nsui") return mv.nsui;
  if (column == "renyi_entropy_2") return mv.renyi_entropy_2;
  if (column == "renyi_entropy_05") return mv.renyi_entropy_05;
  if (column == "max_entropy") return mv.max_entropy;
  if (column == "entropy_ratio") return mv.entropy_ratio;
  if (column == "spectral_factor") return mv.spectral_factor;
  if (column == "spectral_radius") return mv.spectral_radius;
  if (column == "num_nonterminals") return static_cast<double>(mv.num_nonterminals);
  if (column == "num_rules") return static_cast<double>(mv.num_rules);
  if (column == "avg_rules_per_nt") return mv.avg_rules_per_nt;
  if (column == "avg_rhs_len") return mv.avg_rhs_len;
  if (column == "max_branching_factor")
    return static_cast<double>(mv.max_branching_factor);
  if (column == "rule_dist_mean") return mv.rule_dist_mean;
  if (column == "rule_dist_std") return mv.rule_dist_std;
  if (column == "rule_dist_skew") return mv.rule_dist_skew;
  if (column == "rule_dist_kurtosis") return mv.rule_dist_kurtosis;
  if (column == "token_entropy") return mv.token_entropy;
  if (column == "token_perplexity") return mv.token_perplexity;
  if (column == "token_kurtosis") return mv.token_kurtosis;
  if (column == "self_consistency_text") return mv.self_consistency_text;
  if (column == "self_consistency_smt") return mv.self_consistency_smt;
  throw UnknownColumn(column);
}

double shannon_entropy_nt(const Pcfg& pcfg, int nonterminal) {
  double h = 0.0;
  for (double p : observed_probs(pcfg, nonterminal))
    if (p > 0.0) h -= p * std::log2(p);
  return std::max(0.0, h);
}

double renyi_entropy_nt(const Pcfg& pcfg, int nonterminal, double alpha) {
  if (alpha < 0.0) throw InvalidParameters("Renyi order must be >= 0");
  if (alpha == 1.0) return shannon_entropy_nt(pcfg, nonterminal);
  const std::vector<double> probs = observed_probs(pcfg, nonterminal);
  if (alpha == 0.0) return std::log2(static_cast<double>(probs.size()));
  double acc = 0.0;
  for (double p : probs)
    if (p > 0.0) acc += std::pow(p, alpha);
  return std::log2(acc) / (1.0 - alpha);
}

double min_entropy_nt(const Pcfg& pcfg, int nonterminal) {
  const std::vector<double> probs = observed_probs(pcfg, nonterminal);
  return -std::log2(*std::max_element(probs.begin(), probs.end()));
}

GrammarEntropies grammar_level_entropies(const Pcfg& pcfg,
                                         const std::vector<double>& pi) {
  const std::size_t n = pcfg.grammar->nonterminals().size();
  if (pi.size() != n)
    throw WeightMismatch("pi has " + std::to_string(pi.size()) +
                         " entries for " + std::to_string(n) + " nonterminals");
  const std::vector<int> observed = pcfg.observed_nonterminals();
  std::vector<bool> is_observed(n, false);
  for (int a : observed) is_observed[static_cast<std::size_t>(a)] = true;
  double mass = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (pi[a] < 0.0) throw WeightMismatch("negative weight");
    if (!is_observed[a] && pi[a] > 1e-12)
      throw WeightMismatch("weight on unobserved nonterminal " +
                           pcfg.grammar->nonterminal_name(static_cast<int>(a)));
    mass += is_observed[a] ? pi[a] : 0.0;
  }
  if (mass <= 0.0) throw WeightMismatch("pi carries no mass on observed nonterminals");

  GrammarEntropies out{};
  for (int a : observed) {
    const double w = pi[static_cast<std::size_t>(a)] / mass;
    if (w == 0.0) continue;
    out.grammar_entropy += w * shannon_entropy_nt(pcfg, a);
    out.max_entropy +=
        w * std::log2(static_cast<double>(pcfg.observed_rules(a).size()));
  }
  out.perplexity = std::exp2(out.grammar_entropy);
  out.entropy_ratio =
      out.max_entropy > 0.0 ? out.grammar_entropy / out.max_entropy : 0.0;
  out.kl_divergence_uniform = std::max(0.0, out.max_entropy - out.grammar_entropy);
  return out;
}

NsuiResult nsui(double entropy_ratio, double rho) {
  const double s_factor = rho / (1.0 + rho);
  return {entropy_ratio * s_factor, s_factor};
}

StructuralMetrics structural_metrics(const Pcfg& pcfg) {
  if (pcfg.observed_support.empty()) throw EmptyGrammar();
  const std::vector<int> observed = pcfg.observed_nonterminals();
  StructuralMetrics out{};
  out.num_nonterminals = static_cast<int>(observed.size());
  out.num_rules = static_cast<int>(pcfg.observed_support.size());
  out.avg_rules_per_nt =
      static_cast<double>(out.num_rules) / static_cast<double>(out.num_nonterminals);
  double len_total = 0.0;
  for (int r : pcfg.observed_support)
    len_total += static_cast<double>(
        pcfg.grammar->rules()[static_cast<std::size_t>(r)].rhs.size());
  out.avg_rhs_len = len_total / static_cast<double>(out.num_rules);
  for (int a : observed)
    out.max_branching_factor =
        std::max(out.max_branching_factor,
                 static_cast<int>(pcfg.observed_rules(a).size()));
  return out;
}

RuleDistributionStats rule_distribution_stats(const Pcfg& pcfg) {
  if (pcfg.observed_support.empty()) throw EmptyGrammar();
  std::vector<double> probs;
  for (int a : pcfg.observed_nonterminals())
    for (double p : observed_probs(pcfg, a)) probs.push_back(p);

  const Moments m = central_moments(probs);
  RuleDistributionStats out{};
  out.mean = m.mean;
  out.stddev = std::sqrt(m.m2);
  if (out.stddev > 0.0) {
    out.skewness = m.m3 / std::pow(m.m2, 1.5);
    out.kurtosis = m.m4 / (m.m2 * m.m2) - 3.0;
  }
  std::vector<double> sorted = probs;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = sorted.size();
  out.median = k % 2 == 1 ? sorted[k / 2]
                          : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
  out.min = sorted.front();
  out.max = sorted.back();
  return out;
}

TokenBaselines token_level_baselines(const std::vector<TokenRecord>& records) {
  bool any = false;
  for (const TokenRecord& r : records) any = any || r.has_data();
  if (!any) throw MissingTokenData();

  TokenBaselines out{};
  double ppl_sum = 0.0;
  int ppl_samples = 0;
  std::vector<double> pooled;
  double ent_sum = 0.0;
  std::int64_t ent_tokens = 0;

  for (const TokenRecord& r : records) {
    if (!r.has_data()) continue;
    double lp_sum = 0.0;
    for (double lp : r.chosen_logprobs) {
      lp_sum += lp;
      pooled.push_back(lp);
    }
    ppl_sum += std::exp(-lp_sum / static_cast<double>(r.chosen_logprobs.size()));
    ++ppl_samples;
    for (const std::vector<double>& topk : r.topk_probs) {
      double total = 0.0;
      for (double p : topk) total += p;
      if (total <= 0.0) continue;
      double h = 0.0;
      for (double p : topk) {
        const double q = p / total;
        if (q > 0.0) h -= q * std::log2(q);
      }
      ent_sum += h;
      ++ent_tokens;
    }
  }
  out.perplexity = ppl_sum / static_cast<double>(ppl_samples);
  if (ent_tokens > 0) out.entropy = ent_sum / static_cast<double>(ent_tokens);
  const Moments m = central_moments(pooled);
  out.kurtosis = m.m2 > 0.0 ? m.m4 / (m.m2 * m.m2) - 3.0 : 0.0;
  return out;
}

MetricVector compute_metric_vector(const EnsembleContext& context,
                                   const MetricOptions& options) {
  if (context.parsed_programs.empty()) throw NoParsedPrograms();
  const ConcreteGrammar& grammar = *context.grammar;

  RuleCounts counts;
  counts.per_rule.assign(grammar.rules().size(), 0);
  counts.per_nonterminal.assign(grammar.nonterminals().size(), 0);
  for (const auto& apps : context.parsed_programs) accumulate(counts, apps, grammar);
  counts.programs_parsed = static_cast<std::int64_t>(context.parsed_programs.size());
  counts.programs_failed = static_cast<std::int64_t>(context.failed_count);

  const Pcfg pcfg = estimate(counts, grammar, options.method, options.smoothing);

  std::vector<double> pi =
      expected_nonterminal_frequencies(pcfg, counts, PiMode::Empirical);
  if (options.pi_mode == PiMode::FixedPoint) {
    // Mask fixed-point visit weights to the observed sub-grammar.
    std::vector<double> fp =
        expected_nonterminal_frequencies(pcfg, counts, PiMode::FixedPoint);
    std::vector<bool> observed(pi.size(), false);
    for (int a : pcfg.observed_nonterminals())
      observed[static_cast<std::size_t>(a)] = true;
    double mass = 0.0;
    for (std::size_t a = 0; a < fp.size(); ++a) {
      if (!observed[a]) fp[a] = 0.0;
      mass += fp[a];
    }
    if (mass > 0.0) {
      for (double& x : fp) x /= mass;
      pi = std::move(fp);
    }
  }

  MetricVector mv;
  const GrammarEntropies ge = grammar_level_entropies(pcfg, pi);
  mv.grammar_entropy = ge.grammar_entropy;
  mv.perplexity = ge.perplexity;
  mv.max_entropy = ge.max_entropy;
  mv.entropy_ratio = ge.entropy_ratio;
  mv.kl_divergence_uniform = ge.kl_divergence_uniform;

  double renyi2 = 0.0, renyi05 = 0.0, min_ent = 0.0;
  for (int a : pcfg.observed_nonterminals()) {
    const double w = pi[static_cast<std::size_t>(a)];
    if (w == 0.0) continue;
    renyi2 += w * renyi_entropy_nt(pcfg, a, 2.0);
    renyi05 += w * renyi_entropy_nt(pcfg, a, 0.5);
    min_ent += w * min_entropy_nt(pcfg, a);
  }
  mv.renyi_entropy_2 = renyi2;
  mv.renyi_entropy_05 = renyi05;
  mv.min_entropy = min_ent;

  mv.spectral_radius = spectral_radius(mean_matrix(pcfg));
  const NsuiResult ns = nsui(mv.entropy_ratio, mv.spectral_radius);
  mv.nsui = ns.nsui;
  mv.spectral_factor = ns.spectral_factor;

  const StructuralMetrics sm = structural_metrics(pcfg);
  mv.num_nonterminals = sm.num_nonterminals;
  mv.num_rules = sm.num_rules;
  mv.avg_rules_per_nt = sm.avg_rules_per_nt;
  mv.avg_rhs_len = sm.avg_rhs_len;
  mv.max_branching_factor = sm.max_branching_factor;

  const RuleDistributionStats rd = rule_distribution_stats(pcfg);
  mv.rule_dist_mean = rd.mean;
  mv.rule_dist_std = rd.stddev;
  mv.rule_dist_skew = rd.skewness;
  mv.rule_dist_kurtosis = rd.kurtosis;

  bool any_tokens = false;
  for (const TokenRecord& r : context.token_records) any_tokens |= r.has_data();
  if (any_tokens) {
    const TokenBaselines tb = token_level_baselines(context.token_records);
    mv.token_entropy = tb.entropy;
    mv.token_perplexity = tb.perplexity;
    mv.token_kurtosis = tb.kurtosis;
  }

  bool any_text = false, any_smt = false;
  for (const auto& a : context.text_answers) any_text |= a.has_value();
  for (const auto& a : context.smt_answers) any_smt |= a.has_value();
  if (any_text) mv.self_consistency_text = self_consistency(context.text_answers);
  if (any_smt) mv.self_consistency_smt = self_consistency(context.smt_answers);

  return mv;
}

}  // namespace smtuq
