#include "doctest.h"

#include <atomic>
#include <cmath>
#include <cstdlib>

#include "cnls/charge_solver.hpp"
#include "cnls/limits_harness.hpp"
#include "cnls/pde_solvers.hpp"

using namespace cnls;

namespace {

SolverConfig sweep_config(double T = 0.5) {
  SolverConfig c;
  c.N = 256;
  c.dt = 1e-4;
  c.T = T;
  c.snapshot_stride = 50;
  return c;
}

VolterraConfig charge_config(double T = 0.5) {
  VolterraConfig c;
  c.T = T;
  return c;
}

}  // namespace

TEST_CASE("parallel_map keeps order and propagates failures") {
  const auto v = parallel_map<int>(37, [](std::size_t i) { return static_cast<int>(i * i); });
  REQUIRE(v.size() == 37);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  CHECK(parallel_map<int>(0, [](std::size_t) { return 1; }).empty());
  CHECK_THROWS_AS(parallel_map<int>(8,
                                    [](std::size_t i) -> int {
                                      if (i == 5) throw std::runtime_error("rung failed");
                                      return 0;
                                    }),
                  std::runtime_error);
}

TEST_CASE("CNLS_THREADS caps the worker count") {
  ::setenv("CNLS_THREADS", "3", 1);
  CHECK(sweep_threads() == 3);
  ::setenv("CNLS_THREADS", "junk", 1);
  CHECK(sweep_threads() >= 1);
  ::unsetenv("CNLS_THREADS");
}

TEST_CASE("Richardson extrapolation on synthetic traces") {
  // f(h) = L + C h^2 per entry.
  const std::vector<double> ladder{0.4, 0.2, 0.1};
  const std::vector<cplx> L{cplx(1.0, -0.5), cplx(0.25, 2.0)};
  std::vector<std::vector<cplx>> traces;
  for (double h : ladder) traces.push_back({L[0] + 3.0 * h * h, L[1] - cplx(0, 1) * h * h});
  const auto r = richardson_limit(ladder, traces);
  CHECK(r.order == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(sup_distance(r.limit, L) <= 1e-13);
  CHECK(r.finest_error == doctest::Approx(3.0 * 0.01).epsilon(1e-10));
  // Two rungs fall back to order 1.
  const auto two = richardson_limit({0.2, 0.1}, {{cplx(1.2)}, {cplx(1.1)}});
  CHECK(two.order == 1.0);
  CHECK(std::abs(two.limit[0] - 1.0) <= 1e-14);
  CHECK(sup_distance(L, L) == 0.0);
}

TEST_CASE("concentration sweep") {
  const auto u0 = SpectralField::plane_wave(256, 1, 0.5);
  const auto rep = concentration_sweep(u0, {0.4, 0.2, 0.1, 0.05}, sweep_config());
  REQUIRE(rep.errors.size() == 3);
  CHECK(rep.monotone);
  for (std::size_t i = 1; i < rep.errors.size(); ++i) CHECK(rep.errors[i] < rep.errors[i - 1]);
  CHECK(rep.reference_error < rep.errors.front());
  CHECK(rep.parameter == "epsilon");
  CHECK(rep.metric == "max_t H^0.75");
  CHECK(rep.runtime_seconds.size() == 5);

  const auto single = concentration_sweep(u0, {0.2}, sweep_config(0.05));
  CHECK(single.errors.empty());
  CHECK(single.monotone);

  const auto zero = concentration_sweep(SpectralField(256), {0.4, 0.2}, sweep_config(0.05));
  for (double e : zero.errors) CHECK(e == 0.0);
  CHECK(zero.reference_error == 0.0);

  CHECK_THROWS_AS(concentration_sweep(u0, {0.1, 0.2}, sweep_config(0.05)), std::invalid_argument);
  CHECK_THROWS_AS(concentration_sweep(u0, {0.2, 0.1}, sweep_config(0.05), 0.4), std::invalid_argument);
}

TEST_CASE("concentration sweep errors are reproducible") {
  const auto u0 = random_hs_field(1.0, 64, 3);
  SolverConfig c;
  c.T = 0.05;
  const auto a = concentration_sweep(u0, {0.4, 0.2, 0.1}, c);
  const auto b = concentration_sweep(u0, {0.4, 0.2, 0.1}, c);
  CHECK(a.errors == b.errors);
  CHECK(a.reference_error == b.reference_error);
}

TEST_CASE("inviscid sweep") {
  const auto u0 = SpectralField::plane_wave(64, 1, 0.5);
  const auto rep = inviscid_sweep(u0, {0.2, 0.1, 0.05, 0.025}, charge_config());
  REQUIRE(rep.errors.size() == 4);
  CHECK(rep.monotone);
  CHECK(rep.richardson_rate > 0.0);
  const auto zero = inviscid_sweep(SpectralField(64), {0.2, 0.1}, charge_config());
  for (double e : zero.errors) CHECK(e == 0.0);
}

TEST_CASE("commuting diagram") {
  SUBCASE("zero data") {
    const auto rep = commuting_diagram(SpectralField(64), {0.4, 0.2, 0.1}, {0.2, 0.1, 0.05}, SolverConfig{});
    CHECK(rep.discrepancy == 0.0);
  }
  SUBCASE("linear problem: every arrow is a semigroup identity") {
    const auto u0 = random_hs_field(1.0, 64, 4);
    SolverConfig c;
    c.lambda = 0.0;
    c.T = 0.1;
    const auto rep = commuting_diagram(u0, {0.4, 0.2, 0.1}, {0.2, 0.1, 0.05}, c);
    const auto free = free_trace(u0, rep.times);
    CHECK(sup_distance(rep.path_b.limit, free) <= 1e-12);
    // gamma > 0 rungs are exactly the damped free traces, which the
    // extrapolation only approximates.
    VolterraConfig v;
    v.lambda = 0.0;
    v.T = 0.1;
    v.gamma = 0.05;
    CHECK(solve_charge(u0, v).q == free_trace(u0, rep.times, 0.05));
    c.epsilon = 0.1;
    CHECK(sup_distance(snls_solve(u0, c).u_x0, free) <= 1e-12);
  }
  SUBCASE("small data, both limits agree") {
    SolverConfig c = sweep_config(0.25);
    c.snapshot_stride = 2500;
    const auto rep =
        commuting_diagram(SpectralField::plane_wave(256, 1, 0.3), {0.4, 0.2, 0.1, 0.05}, {0.2, 0.1, 0.05, 0.025}, c);
    CHECK(rep.discrepancy <= std::max(rep.path_a.finest_error, rep.path_b.finest_error));
    CHECK(rep.commutes);
  }
}

TEST_CASE("mild residual") {
  const auto u0 = SpectralField::plane_wave(64, 1, 0.5);
  const auto ch = solve_charge(u0, charge_config());
  CHECK(mild_residual(ch, u0, 0.25, 64, 0.75) <= 10 * ch.config.picard_tol);

  // The free evolution is not a solution once the nonlinearity is on.
  MildCandidate freec;
  freec.dt = 1e-3;
  std::vector<double> t;
  for (int j = 0; j <= 250; ++j) t.push_back(j * 1e-3);
  freec.trace = free_trace(u0, t);
  freec.field_at_t = free_evolve(u0, 0.25);
  CHECK(mild_residual(freec, u0, 0.25, 64, 0.75, charge_config()) > 1e-3);

  const auto zc = solve_charge(SpectralField(64), charge_config());
  CHECK(mild_residual(zc, SpectralField(64), 0.5, 64, 0.75) == 0.0);
}

TEST_CASE("conservation reports") {
  const auto zero = conservation_report(snls_solve(SpectralField(64), SolverConfig{}));
  CHECK(zero.max_mass_drift == 0.0);
  CHECK(zero.max_energy_drift == 0.0);

  SolverConfig c;
  c.epsilon = 0.25;
  CHECK(conservation_report(snls_solve(random_hs_field(1.0, 64, 7), c)).max_mass_drift <= 1e-10);

  const auto u0 = SpectralField::plane_wave(64, 1, 0.5);
  VolterraConfig v = charge_config();
  const auto a = conservation_report(solve_charge(u0, v), u0);
  v.dt = 5e-4;
  const auto b = conservation_report(solve_charge(u0, v), u0);
  CHECK(a.max_energy_drift <= 1e-4);
  CHECK(a.max_energy_drift / b.max_energy_drift >= 3.0);
  CHECK(a.max_energy_drift / b.max_energy_drift <= 5.0);
}
