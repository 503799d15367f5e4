#include "smtuq/pcfg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "smtuq/errors.hpp"

namespace smtuq {

std::int64_t RuleCounts::total() const {
  return std::accumulate(per_nonterminal.begin(), per_nonterminal.end(),
                         std::int64_t{0});
}

std::vector<int> Pcfg::observed_nonterminals() const {
  std::vector<bool> seen(grammar->nonterminals().size(), false);
  for (int r : observed_support)
    seen[static_cast<std::size_t>(grammar->rules()[static_cast<std::size_t>(r)].lhs)] = true;
  std::vector<int> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Pcfg::observed_rules(int nonterminal) const {
  std::vector<int> out;
  for (int r : grammar->rules_by_lhs()[static_cast<std::size_t>(nonterminal)])
    if (observed(r)) out.push_back(r);
  return out;
}

void accumulate(RuleCounts& into, const std::vector<RuleApplication>& applications,
                const ConcreteGrammar& grammar) {
  if (into.per_rule.empty()) {
    into.per_rule.assign(grammar.rules().size(), 0);
    into.per_nonterminal.assign(grammar.nonterminals().size(), 0);
  }
  for (const RuleApplication& app : applications) {
    if (app.rule_id < 0 ||
        static_cast<std::size_t>(app.rule_id) >= grammar.rules().size())
      throw UnknownRuleId(app.rule_id);
    ++into.per_rule[static_cast<std::size_t>(app.rule_id)];
    ++into.per_nonterminal[static_cast<std::size_t>(
        grammar.rules()[static_cast<std::size_t>(app.rule_id)].lhs)];
  }
}

RuleCounts count_rules(const std::vector<RuleApplication>& applications,
                       const ConcreteGrammar& grammar) {
  RuleCounts counts;
  counts.per_rule.assign(grammar.rules().size(), 0);
  counts.per_nonterminal.assign(grammar.nonterminals().size(), 0);
  accumulate(counts, applications, grammar);
  return counts;
}

Pcfg estimate(const RuleCounts& counts, const ConcreteGrammar& grammar,
              EstimationMethod method, double smoothing) {
  const double c = method == EstimationMethod::MLE ? 0.0 : smoothing;
  if (method != EstimationMethod::MLE && !(c > 0.0))
    throw InvalidSmoothingParameter(c);

  Pcfg pcfg;
  pcfg.grammar = &grammar;
  pcfg.method = method;
  pcfg.smoothing = c;
  pcfg.prob.assign(grammar.rules().size(), 0.0);

  for (std::size_t a = 0; a < grammar.nonterminals().size(); ++a) {
    const auto& rules = grammar.rules_by_lhs()[a];
    if (rules.empty()) continue;
    const double total = static_cast<double>(counts.per_nonterminal[a]);
    const double k = static_cast<double>(rules.size());
    for (int r : rules) {
      const double cr = static_cast<double>(counts.per_rule[static_cast<std::size_t>(r)]);
      double p;
      if (total > 0.0)
        p = (cr + c) / (total + c * k);
      else
        p = 1.0 / k;  // no observations: uniform over R_A
      pcfg.prob[static_cast<std::size_t>(r)] = p;
      if (cr > 0.0) pcfg.observed_support.insert(r);
    }
  }
  return pcfg;
}

std::string Pcfg::report(const RuleCounts& counts) const {
  std::ostringstream out;
  const std::string bnf = grammar->to_bnf();
  std::istringstream lines(bnf);
  std::string line;
  int id = 0;
  char buf[64];
  while (std::getline(lines, line)) {
    std::snprintf(buf, sizeof(buf), "%.9f", prob[static_cast<std::size_t>(id)]);
    out << id << '\t' << line << '\t'
        << counts.per_rule[static_cast<std::size_t>(id)] << '\t' << buf << '\n';
    ++id;
  }
  return out.str();
}

MeanMatrix mean_matrix(const Pcfg& pcfg) {
  const ConcreteGrammar& g = *pcfg.grammar;
  MeanMatrix m;
  m.dim = g.nonterminals().size();
  m.data.assign(m.dim * m.dim, 0.0);
  for (const Rule& r : g.rules()) {
    const double p = pcfg.prob[static_cast<std::size_t>(r.id)];
    if (p == 0.0) continue;
    for (const GrammarSymbol& s : r.rhs) {
      if (s.type == GrammarSymbol::Type::Nonterminal)
        m.at(static_cast<std::size_t>(s.nonterminal),
             static_cast<std::size_t>(r.lhs)) += p;
    }
  }
  return m;
}

std::string MeanMatrix::to_csv(const ConcreteGrammar& grammar) const {
  std::ostringstream out;
  out << "nonterminal";
  for (std::size_t i = 0; i < dim; ++i)
    out << ',' << grammar.nonterminal_name(static_cast<int>(i));
  out << '\n';
  char buf[64];
  for (std::size_t j = 0; j < dim; ++j) {
    out << grammar.nonterminal_name(static_cast<int>(j));
    for (std::size_t i = 0; i < dim; ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", at(j, i));
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Gelfand limit ||B^k||^(1/k) via repeated squaring with normalization.
// Deterministic; handles reducible and periodic matrices that stall power
// iteration. Exact to roundoff at k = 2^60.
double spectral_radius_by_squaring(const MeanMatrix& matrix) {
  const std::size_t n = matrix.dim;
  std::vector<double> a = matrix.data;
  double s = max_abs(a);
  if (s == 0.0) return 0.0;
  for (double& x : a) x /= s;
  double log_norm = std::log(s);  // log ||B^(2^k)|| for the current k
  std::vector<double> next(n * n);
  const int kSquarings = 60;
  for (int k = 0; k < kSquarings; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) acc += a[i * n + t] * a[t * n + j];
        next[i * n + j] = acc;
      }
    a.swap(next);
    s = max_abs(a);
    if (s == 0.0) return 0.0;  // nilpotent
    for (double& x : a) x /= s;
    log_norm = 2.0 * log_norm + std::log(s);
  }
  return std::exp(log_norm / std::pow(2.0, kSquarings));
}

}  // namespace

double spectral_radius(const MeanMatrix& matrix) {
  const std::size_t n = matrix.dim;
  if (n == 0) return 0.0;
  if (max_abs(matrix.data) == 0.0) return 0.0;

  // Power iteration on B + I: the shift removes periodicity and preserves
  // rho exactly for nonnegative B (rho(B + I) = rho(B) + 1).
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> uniform(0.5, 1.5);
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng);

  std::vector<double> w(n);
  double lambda_prev = 0.0;
  const int max_iters = 10000;
  for (int iter = 0; iter < max_iters; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = v[j];  // identity shift
      for (std::size_t i = 0; i < n; ++i) acc += matrix.at(j, i) * v[i];
      w[j] = acc;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      num += w[j] * v[j];
      den += v[j] * v[j];
    }
    const double lambda = num / den;
    const double scale = max_abs(w);
    if (scale == 0.0) return 0.0;
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / scale;
    if (iter > 0 && std::abs(lambda - lambda_prev) <= 1e-10 * std::max(1.0, std::abs(lambda))) {
      // Two extra confirmation sweeps guard against slow oscillation.
      lambda_prev = lambda;
      bool stable = true;
      for (int extra = 0; extra < 2 && stable; ++extra) {
        for (std::size_t j = 0; j < n; ++j) {
          double acc = v[j];
          for (std::size_t i = 0; i < n; ++i) acc += matrix.at(j, i) * v[i];
          w[j] = acc;
        }
        num = den = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          num += w[j] * v[j];
          den += v[j] * v[j];
        }
        const double l2 = num / den;
        if (std::abs(l2 - lambda_prev) > 1e-10 * std::max(1.0, std::abs(l2)))
          stable = false;
        lambda_prev = l2;
        const double sc = max_abs(w);
        for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / sc;
      }
      if (stable) {
        const double rho = std::max(0.0, lambda_prev - 1.0);
        if (n <= 32) {
          // Confirm against the squaring limit: slow geometric convergence
          // can satisfy the step tolerance while still off the true value.
          const double check = spectral_radius_by_squaring(matrix);
          if (std::abs(check - rho) > 1e-9 * std::max(1.0, rho)) return check;
        }
        return rho;
      }
    }
    lambda_prev = lambda;
  }

  if (n <= 32) return spectral_radius_by_squaring(matrix);
  throw NonConvergence("power iteration exhausted its budget on a " +
                       std::to_string(n) + "-dimensional matrix");
}

ConsistencyResult check_consistency(const Pcfg& pcfg) {
  const double rho = spectral_radius(mean_matrix(pcfg));
  return {rho <= 1.0 + 1e-9 ? Consistency::Proper : Consistency::Improper, rho};
}

std::vector<double> expected_nonterminal_frequencies(const Pcfg& pcfg,
                                                     const RuleCounts& counts,
                                                     PiMode mode) {
  const std::size_t n = pcfg.grammar->nonterminals().size();
  std::vector<double> pi(n, 0.0);

  if (mode == PiMode::Empirical) {
    const double total = static_cast<double>(counts.total());
    if (total <= 0.0) throw EmptyCorpus();
    for (std::size_t a = 0; a < n; ++a)
      pi[a] = static_cast<double>(counts.per_nonterminal[a]) / total;
    return pi;
  }

  // FixedPoint: expected visit counts nu solve nu = e_S + B nu.
  MeanMatrix b = mean_matrix(pcfg);
  const double rho = spectral_radius(b);
  if (rho >= 1.0 - 1e-6) throw DivergentGrammar(rho);

  // Gaussian elimination on (I - B) nu = e_S with partial pivoting.
  std::vector<double> m((n + 1) * n);
  auto cell = [&](std::size_t r, std::size_t c) -> double& { return m[r * (n + 1) + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      cell(r, c) = (r == c ? 1.0 : 0.0) - b.at(r, c);
    cell(r, n) = r == static_cast<std::size_t>(pcfg.grammar->start()) ? 1.0 : 0.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(cell(r, col)) > std::abs(cell(pivot, col))) pivot = r;
    if (pivot != col)
      for (std::size_t c = 0; c <= n; ++c) std::swap(cell(pivot, c), cell(col, c));
    const double d = cell(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = cell(r, col) / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) cell(r, c) -= f * cell(col, c);
    }
  }
  std::vector<double> nu(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = cell(r, n);
    for (std::size_t c = r + 1; c < n; ++c) acc -= cell(r, c) * nu[c];
    nu[r] = acc / cell(r, r);
  }
  double total = 0.0;
  for (double x : nu) total += std::max(0.0, x);
  for (std::size_t a = 0; a < n; ++a) pi[a] = std::max(0.0, nu[a]) / total;
  return pi;
}

}  // namespace smtuq
