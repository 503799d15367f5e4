#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace smtuq {

// Principal branch of the Lambert W function (w >= -1, x >= -1/e).
// Halley iteration; residual |w e^w - x| <= 1e-10 max(1, |x|).
double lambert_w0(double x);

struct CoverageQuery {
  std::int64_t n_samples;
  double entropy_bits;
  double region_mass;
};

// min(1, exp(-N * eps / 2^H)).
double miss_probability_bound(const CoverageQuery& query);

struct CriticalEpsilon {
  double exact;                     // (2^H / N) W(N / 2^H)
  std::optional<double> asymptotic; // (2^H / N) ln(N / 2^H), only when N > 2^H
  bool in_regime;                   // N >= 2^H; the bound is asymptotic
};

CriticalEpsilon critical_epsilon(std::int64_t n_samples, double entropy_bits);

enum class ScheduleKind { Gaussian, Exponential, Uniform };

struct TemperatureSchedule {
  ScheduleKind kind;
  double tau_min, tau_max;
  double shape;  // sigma (Gaussian) or lambda (Exponential); unused for Uniform
  std::vector<double> values;

  std::string to_csv() const;  // index,temperature
};

TemperatureSchedule gaussian_schedule(int n, double tau_min = 0.1,
                                      double tau_max = 1.5, double sigma = -1.0);

TemperatureSchedule exponential_schedule(int n, double lambda,
                                         double tau_min = 0.1,
                                         double tau_max = 1.5);

TemperatureSchedule uniform_schedule(int n, double tau);

struct CoverageValidation {
  double empirical_miss_rate;
  double exact_miss_probability;  // (1 - eps)^N
  double bound;
  double region_mass;
  double entropy_bits;
  bool in_regime;  // N >= 2^H
  bool holds;      // empirical <= bound + 3 binomial standard errors
};

// Monte-Carlo check of the coverage bound on an explicit finite
// distribution. Per-trial seeds derive deterministically from `seed`.
CoverageValidation validate_coverage_bound(const std::vector<double>& distribution,
                                           const std::vector<std::size_t>& region,
                                           std::int64_t n_samples,
                                           std::int64_t trials,
                                           std::uint64_t seed);

}  // namespace smtuq
