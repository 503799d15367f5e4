#include "smtuq/coverage.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "smtuq/errors.hpp"

namespace smtuq {

double lambert_w0(double x) {
  constexpr double kBranchPoint = -0.36787944117144233;  // -1/e
  if (x < kBranchPoint - 1e-12)
    throw DomainError("lambert_w0 requires x >= -1/e, got " + std::to_string(x));
  if (x < kBranchPoint) x = kBranchPoint;
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.25) {
    // Series about the branch point w(-1/e + t) ~ -1 + sqrt(2 e t).
    const double t = std::max(0.0, x - kBranchPoint);
    w = -1.0 + std::sqrt(2.0 * std::exp(1.0) * t);
  } else if (x > std::exp(1.0)) {
    const double lx = std::log(x);
    w = lx - std::log(lx);
  } else {
    w = x > 1.0 ? std::log(x) : x;
  }

  for (int iter = 0; iter < 50; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-12 * std::max(1.0, std::abs(x))) break;
    const double wp1 = w + 1.0;
    const double delta = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= delta;
    if (w < -1.0) w = -1.0;
    if (std::abs(delta) <= 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

double miss_probability_bound(const CoverageQuery& query) {
  const double support = std::exp2(query.entropy_bits);
  const double exponent =
      -static_cast<double>(query.n_samples) * query.region_mass / support;
  return std::min(1.0, std::exp(exponent));
}

CriticalEpsilon critical_epsilon(std::int64_t n_samples, double entropy_bits) {
  const double support = std::exp2(entropy_bits);
  const double ratio = static_cast<double>(n_samples) / support;
  CriticalEpsilon out{};
  out.exact = lambert_w0(ratio) / ratio;
  out.in_regime = static_cast<double>(n_samples) >= support;
  // Two-term expansion W(r) ~ ln r - ln ln r; valid once ln ln r >= 0.
  if (ratio > std::exp(1.0)) {
    const double lr = std::log(ratio);
    out.asymptotic = (lr - std::log(lr)) / ratio;
  }
  return out;
}

std::string TemperatureSchedule::to_csv() const {
  std::ostringstream out;
  out << "index,temperature\n";
  char buf[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6f", values[i]);
    out << i << ',' << buf << '\n';
  }
  return out.str();
}

TemperatureSchedule gaussian_schedule(int n, double tau_min, double tau_max,
                                      double sigma) {
  if (n < 1 || tau_max < tau_min)
    throw InvalidParameters("gaussian schedule requires n >= 1 and tau_max >= tau_min");
  if (sigma <= 0.0) sigma = static_cast<double>(n) / 5.0;
  TemperatureSchedule s{ScheduleKind::Gaussian, tau_min, tau_max, sigma, {}};
  const double center = static_cast<double>(n) / 2.0;
  for (int i = 0; i < n; ++i) {
    const double d = static_cast<double>(i) - center;
    s.values.push_back(tau_min +
                       (tau_max - tau_min) * std::exp(-d * d / (2.0 * sigma * sigma)));
  }
  return s;
}

TemperatureSchedule exponential_schedule(int n, double lambda, double tau_min,
                                         double tau_max) {
  if (n < 1 || lambda <= 0.0 || tau_max < tau_min)
    throw InvalidParameters("exponential schedule requires n >= 1 and lambda > 0");
  TemperatureSchedule s{ScheduleKind::Exponential, tau_min, tau_max, lambda, {}};
  for (int i = 0; i < n; ++i)
    s.values.push_back(tau_min + (tau_max - tau_min) *
                                     std::exp(-lambda * static_cast<double>(i)));
  return s;
}

TemperatureSchedule uniform_schedule(int n, double tau) {
  if (n < 1 || tau < 0.0)
    throw InvalidParameters("uniform schedule requires n >= 1 and tau >= 0");
  TemperatureSchedule s{ScheduleKind::Uniform, tau, tau, 0.0, {}};
  s.values.assign(static_cast<std::size_t>(n), tau);
  return s;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

CoverageValidation validate_coverage_bound(const std::vector<double>& distribution,
                                           const std::vector<std::size_t>& region,
                                           std::int64_t n_samples,
                                           std::int64_t trials,
                                           std::uint64_t seed) {
  double total = 0.0;
  for (double p : distribution) {
    if (p < 0.0) throw InvalidDistribution("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw InvalidDistribution("probabilities sum to " + std::to_string(total));
  if (trials < 1000) throw InvalidDistribution("trials must be >= 1000");

  std::vector<bool> in_region(distribution.size(), false);
  double eps = 0.0;
  for (std::size_t i : region) {
    if (i >= distribution.size()) throw InvalidDistribution("region index out of range");
    if (!in_region[i]) eps += distribution[i];
    in_region[i] = true;
  }

  double entropy = 0.0;
  for (double p : distribution)
    if (p > 0.0) entropy -= p * std::log2(p);

  std::vector<double> cdf(distribution.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < distribution.size(); ++i) {
    acc += distribution[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  std::int64_t misses = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(splitmix64(seed ^ static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool hit = false;
    for (std::int64_t s = 0; s < n_samples && !hit; ++s) {
      const double u = unit(rng);
      std::size_t lo = 0, hi = cdf.size() - 1;
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (u <= cdf[mid]) hi = mid; else lo = mid + 1;
      }
      hit = in_region[lo];
    }
    if (!hit) ++misses;
  }

  CoverageValidation out{};
  out.region_mass = eps;
  out.entropy_bits = entropy;
  out.empirical_miss_rate =
      static_cast<double>(misses) / static_cast<double>(trials);
  out.exact_miss_probability =
      std::pow(1.0 - eps, static_cast<double>(n_samples));
  out.bound = miss_probability_bound({n_samples, entropy, eps});
  out.in_regime = static_cast<double>(n_samples) >= std::exp2(entropy);
  const double se = std::sqrt(out.exact_miss_probability *
                              (1.0 - out.exact_miss_probability) /
                              static_cast<double>(trials));
  out.holds = out.empirical_miss_rate <= out.bound + 3.0 * se;
  return out;
}

}  // namespace smtuq
