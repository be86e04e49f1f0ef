#include "doctest.h"

#include <cmath>

#include "cnls/analysis_validators.hpp"
#include "cnls/calibration.hpp"
#include "oracles.hpp"

using namespace cnls;

namespace {

// sum_{|n|<=N, n^2 != m^2} 1/|m^2 - n^2| in long double.
long double gap_sum_direct(long double m, long N) {
  long double acc = 0.0L;
  for (long n = -N; n <= N; ++n) {
    const long double d = m * m - static_cast<long double>(n) * n;
    if (d != 0.0L) acc += 1.0L / std::fabs(d);
  }
  return acc;
}

}  // namespace

TEST_CASE("indicator norm closed form") {
  CHECK(indicator_hs_norm_closed(1.0, 0.25) * indicator_hs_norm_closed(1.0, 0.25) ==
        doctest::Approx(17.0).epsilon(1e-15));
  const double q = indicator_hs_norm_closed(0.25, 0.25);
  CHECK(q * q == doctest::Approx(8.0625).epsilon(1e-15));
  for (double a : {1e-3, 0.1, 2.0}) {
    for (double s : {0.1, 0.3, 0.45}) {
      const double want = std::sqrt(a * a + 2 * std::pow(a, 1 - 2 * s) / (s * (1 - 2 * s)));
      CHECK(indicator_hs_norm_closed(a, s) == doctest::Approx(want).epsilon(1e-14));
    }
  }
}

TEST_CASE("indicator norm vanishes with the interval, slowly") {
  // a^{1-2s} with 1-2s = 0.1 decays very slowly: at a = 1e-6 the norm is
  // still about 3.3, and it drops below 0.1 only for astronomically small a.
  double prev = INFINITY;
  for (double a : {1e-2, 1e-6, 1e-12, 1e-24, 1e-40}) {
    const double v = indicator_hs_norm_closed(a, 0.45);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(indicator_hs_norm_closed(1e-6, 0.45) == doctest::Approx(std::sqrt(2 * std::pow(1e-6, 0.1) / 0.045)));
  CHECK(indicator_hs_norm_closed(1e-40, 0.45) < 0.1);
}

TEST_CASE("indicator norm quadrature agrees with the closed form") {
  for (double a : {0.1, 0.5, 1.0}) {
    for (double s : {0.2, 0.3, 0.45}) {
      const auto n = indicator_hs_norm(a, s);
      CHECK(std::abs(n.quadrature - n.closed_form) <= 1e-4 * n.closed_form);
    }
  }
  CHECK_THROWS_AS(indicator_hs_norm(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(indicator_hs_norm(0.0, 0.3), std::invalid_argument);
}

TEST_CASE("heat smoothing") {
  const std::vector<double> t{0.05, 0.5, 2.0, 5.0};
  const std::vector<SpectralField> fields{random_hs_field(1.0, 32, 1), random_hs_field(0.5, 32, 2)};
  CHECK(heat_smoothing_ratio(0.2, 0.7, 0.7, t, fields, 1.0).quantity <= 1.0 + 1e-15);

  for (int n : {1, 3, 10}) {
    for (double g : {0.05, 0.3}) {
      for (double tt : {0.1, 1.0, 3.0}) {
        for (auto [s, sp] : {std::pair{0.0, 1.0}, std::pair{0.25, 0.5}}) {
          const auto f = SpectralField::plane_wave(16, n);
          const auto b = heat_smoothing_ratio(g, s, sp, {tt}, {f}, INFINITY);
          const double closed =
              std::pow(1.0 + n * n, (sp - s) / 2) * std::exp(-g * n * n * tt) * std::pow(g * tt, (sp - s) / 2);
          CHECK(b.quantity == doctest::Approx(closed).epsilon(1e-12));
          CHECK(heat_smoothing_single_mode(n, g, tt, s, sp) == doctest::Approx(closed).epsilon(1e-14));
        }
      }
    }
  }

  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) grid.push_back(0.01 * std::pow(1000.0, i / 24.0));
  grid.back() = 10.0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto b = heat_smoothing_ratio(0.1, 0.0, 1.0, grid, {random_hs_field(1.0, 64, seed)},
                                        calibration::kHeatSmoothingCap);
    CHECK(b.pass);
    CHECK(b.cap == calibration::kHeatSmoothingCap);
  }
  CHECK_THROWS_AS(heat_smoothing_ratio(0.1, 0.0, 1.0, {11.0}, fields, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(heat_smoothing_ratio(0.1, 1.0, 0.0, {1.0}, fields, 1.0), std::invalid_argument);
}

TEST_CASE("combinatorial sums") {
  CHECK(combinatorial_partial_sum(2.0, 4) == doctest::Approx(0.25 + 2.0 / 3 + 2.0 / 5 + 2.0 / 12).epsilon(1e-15));
  for (double m : {0.0, 1.0, std::sqrt(2.0), 7.5, 30.0}) {
    CHECK(combinatorial_partial_sum(m, 5000) ==
          doctest::Approx(static_cast<double>(gap_sum_direct(m, 5000))).epsilon(1e-14));
  }
  const double zero = combinatorial_partial_sum(0.0, 1000) + combinatorial_tail(1000);
  CHECK(zero >= kPi * kPi / 3);
  CHECK(zero <= kPi * kPi / 3 + combinatorial_tail(1000));
  // The tail really bounds what truncation drops.
  for (double m : {1.0, 3.3, 10.0}) {
    const long N = 40;
    CHECK(combinatorial_partial_sum(m, N) + combinatorial_tail(N) >= static_cast<double>(gap_sum_direct(m, 400000)));
  }
}

TEST_CASE("combinatorial bound over the calibration grid") {
  std::vector<double> m;
  for (int i = 1; i <= 200; ++i) m.push_back(i);
  const auto irr = irrational_samples(50);
  REQUIRE(irr.size() == 50);
  CHECK(irr.front() == std::sqrt(2.0));
  for (double x : irr) CHECK(x != std::round(x));
  m.insert(m.end(), irr.begin(), irr.end());
  const double b = combinatorial_bound(m, 200000);
  CHECK(b <= calibration::kCombinatorialCap);
  CHECK(b == doctest::Approx(calibration::kCombinatorialMax).epsilon(1e-12));
  CHECK_THROWS_AS(combinatorial_bound({300.0}, 200000), std::invalid_argument);
}

TEST_CASE("inverse gap sum") {
  CHECK(inverse_gap_sum(0) == doctest::Approx(kPi * kPi / 3).epsilon(1e-10));
  for (long K : {5L, 49L, 1000L}) {
    // The direct sum to |n| = 2e6 misses a tail of about 2/2e6 = 1e-6.
    const long double direct = gap_sum_direct(std::sqrt(static_cast<long double>(K)), 2000000);
    CHECK(inverse_gap_sum(K) == doctest::Approx(static_cast<double>(direct)).epsilon(2e-6));
  }
}

TEST_CASE("full summability") {
  auto only_zero = [](int k) { return k == 0 ? 1.0 : 0.0; };
  for (int power : {1, 2, 3}) {
    CHECK(full_summability_check(only_zero, 16, power) == doctest::Approx(kPi * kPi / 3).epsilon(1e-10));
  }
  CHECK(full_summability_check([](int) { return 0.0; }, 16, 3) == 0.0);
  auto decay = [](int k) { return 1.0 / (1.0 + static_cast<double>(k) * k); };
  const double a = full_summability_check(decay, 32, 3);
  const double b = full_summability_check(decay, 64, 3);
  CHECK(std::abs(b - a) <= 0.02 * b);
  CHECK_THROWS_AS(full_summability_check(decay, 8, 4), std::invalid_argument);
}
