#include <doctest.h>

#include <cmath>

#include "smtuq/errors.hpp"
#include "smtuq/coverage.hpp"

using namespace smtuq;
using doctest::Approx;

TEST_CASE("lambert w hand values and residuals") {
  CHECK(lambert_w0(0.0) == Approx(0.0));
  CHECK(lambert_w0(std::exp(1.0)) == Approx(1.0).epsilon(1e-12));
  CHECK(lambert_w0(1.0) == Approx(0.5671432904).epsilon(1e-9));
  CHECK(lambert_w0(-1.0 / std::exp(1.0)) == Approx(-1.0).epsilon(1e-6));
  for (double x : {-0.35, -0.1, 0.0, 0.5, 1.0, 10.0, 1e6}) {
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-10 * std::max(1.0, std::abs(x)));
  }
  CHECK_THROWS_AS(lambert_w0(-0.5), DomainError);
}

TEST_CASE("miss probability bound hand exponents") {
  CHECK(miss_probability_bound({100, 0.0, 0.0}) == Approx(1.0));
  CHECK(miss_probability_bound({100, 0.0, 0.1}) ==
        Approx(std::exp(-10.0)).epsilon(1e-9));
  CHECK(miss_probability_bound({200, 3.0, 0.1}) ==
        Approx(std::exp(-2.5)).epsilon(1e-9));
  CHECK(miss_probability_bound({1, 10.0, 0.0}) <= 1.0);
}

TEST_CASE("critical epsilon identities") {
  SUBCASE("N = 2^H reduces to W(1)") {
    const auto eps = critical_epsilon(8, 3.0);
    CHECK(eps.exact == Approx(0.5671433).epsilon(1e-6));
    CHECK(eps.in_regime);
  }
  SUBCASE("H = 0") {
    const auto eps = critical_epsilon(1000, 0.0);
    CHECK(eps.exact == Approx(lambert_w0(1000.0) / 1000.0).epsilon(1e-12));
    CHECK(eps.exact == Approx(0.0052972).epsilon(1e-4));
    REQUIRE(eps.asymptotic.has_value());
  }
  SUBCASE("defining identity exp(-N eps / 2^H) = eps") {
    for (std::int64_t n : {4, 16, 100, 5000}) {
      for (double h : {0.0, 1.5, 3.0, 8.0}) {
        const auto eps = critical_epsilon(n, h);
        const double ratio = static_cast<double>(n) / std::exp2(h);
        CHECK(std::abs(std::exp(-ratio * eps.exact) - eps.exact) <= 1e-9);
      }
    }
  }
  SUBCASE("asymptotic form approaches exact for huge ratios") {
    const auto eps = critical_epsilon(1000000, 0.0);
    REQUIRE(eps.asymptotic.has_value());
    CHECK(std::abs(*eps.asymptotic / eps.exact - 1.0) <= 0.10);
  }
  SUBCASE("below the regime no asymptotic value is reported") {
    const auto eps = critical_epsilon(4, 10.0);
    CHECK(!eps.in_regime);
    CHECK(!eps.asymptotic.has_value());
  }
}

TEST_CASE("gaussian schedule shape") {
  const auto sched = gaussian_schedule(10, 0.1, 1.5, 2.0);
  REQUIRE(sched.values.size() == 10);
  CHECK(sched.values[5] == Approx(1.5));  // i = N/2 peaks at tau_max
  CHECK(sched.values[0] ==
        Approx(0.1 + 1.4 * std::exp(-25.0 / 8.0)).epsilon(1e-9));
  for (double v : sched.values) {
    CHECK(v >= 0.1 - 1e-12);
    CHECK(v <= 1.5 + 1e-12);
  }
  const auto flat = gaussian_schedule(5, 0.7, 0.7, 1.0);
  for (double v : flat.values) CHECK(v == Approx(0.7));
  CHECK_THROWS_AS(gaussian_schedule(0, 0.1, 1.5, 1.0), InvalidParameters);
  CHECK_THROWS_AS(gaussian_schedule(5, 1.5, 0.1, 1.0), InvalidParameters);
}

TEST_CASE("exponential schedule halves the span with lambda ln 2") {
  const auto sched = exponential_schedule(3, std::log(2.0));
  REQUIRE(sched.values.size() == 3);
  CHECK(sched.values[0] == Approx(1.5).epsilon(1e-12));
  CHECK(sched.values[1] == Approx(0.8).epsilon(1e-12));
  CHECK(sched.values[2] == Approx(0.45).epsilon(1e-12));
  // large lambda collapses to tau_min after the first step
  const auto steep = exponential_schedule(4, 50.0);
  for (std::size_t i = 1; i < steep.values.size(); ++i)
    CHECK(steep.values[i] == Approx(0.1).epsilon(1e-6));
  CHECK_THROWS_AS(exponential_schedule(3, 0.0), InvalidParameters);
}

TEST_CASE("schedule csv format") {
  const std::string csv = uniform_schedule(2, 1.0).to_csv();
  CHECK(csv == "index,temperature\n0,1.000000\n1,1.000000\n");
}

TEST_CASE("coverage bound validator") {
  SUBCASE("region of full mass never misses") {
    const std::vector<double> dist = {0.5, 0.5};
    const auto v = validate_coverage_bound(dist, {0, 1}, 10, 1000, 1);
    CHECK(v.empirical_miss_rate == Approx(0.0));
    CHECK(v.holds);
  }
  SUBCASE("empty region always misses and the bound is vacuous") {
    const std::vector<double> dist = {0.5, 0.5};
    const auto v = validate_coverage_bound(dist, {}, 10, 1000, 1);
    CHECK(v.empirical_miss_rate == Approx(1.0));
    CHECK(v.bound == Approx(1.0));
    CHECK(v.holds);
  }
  SUBCASE("uniform-8 hand case") {
    const std::vector<double> dist(8, 0.125);
    const auto v = validate_coverage_bound(dist, {0}, 16, 100000, 7);
    CHECK(v.entropy_bits == Approx(3.0).epsilon(1e-12));
    CHECK(v.exact_miss_probability ==
          Approx(std::pow(0.875, 16)).epsilon(1e-12));
    CHECK(v.bound == Approx(std::exp(-0.25)).epsilon(1e-9));
    const double se =
        std::sqrt(v.exact_miss_probability * (1 - v.exact_miss_probability) /
                  100000.0);
    CHECK(std::abs(v.empirical_miss_rate - v.exact_miss_probability) <=
          3 * se);
    CHECK(v.empirical_miss_rate <= v.bound);
    CHECK(v.holds);
  }
  SUBCASE("determinism and validation") {
    const std::vector<double> dist = {0.25, 0.25, 0.5};
    const auto a = validate_coverage_bound(dist, {2}, 5, 2000, 99);
    const auto b = validate_coverage_bound(dist, {2}, 5, 2000, 99);
    CHECK(a.empirical_miss_rate == Approx(b.empirical_miss_rate));
    CHECK_THROWS_AS(validate_coverage_bound({0.5, 0.4}, {0}, 5, 2000, 1),
                    InvalidDistribution);
    CHECK_THROWS_AS(validate_coverage_bound({-0.5, 1.5}, {0}, 5, 2000, 1),
                    InvalidDistribution);
  }
}
