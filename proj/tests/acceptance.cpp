// Acceptance runner: one PASS/FAIL line per criterion with its wall time.
// A criterion also fails when it overruns its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cnls/analysis_validators.hpp"
#include "cnls/charge_solver.hpp"
#include "cnls/kernels.hpp"
#include "cnls/limits_harness.hpp"
#include "cnls/pde_solvers.hpp"
#include "oracles.hpp"

using namespace cnls;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
  return s;
}

SpectralField half_plane_wave(int N) { return SpectralField::plane_wave(N, 1, 0.5); }

VolterraConfig charge_config(double dt, double T = 0.5) {
  VolterraConfig c;
  c.dt = dt;
  c.T = T;
  return c;
}

// Resolved enough for the finest epsilon rung (see README).
SolverConfig fine_config(double T = 0.5) {
  SolverConfig c;
  c.N = 256;
  c.dt = 1e-4;
  c.T = T;
  c.snapshot_stride = 50;
  return c;
}

Outcome mass_conservation() {
  SolverConfig c;
  c.N = 64;
  c.epsilon = 0.25;
  c.lambda = 1.0;
  c.dt = 1e-3;
  c.T = 1.0;
  const auto rep = conservation_report(snls_solve(random_hs_field(1.0, 64, 7), c));
  return {rep.max_mass_drift <= 1e-10, "max mass drift " + fmt(rep.max_mass_drift)};
}

Outcome energy_conservation() {
  const auto u0 = half_plane_wave(64);
  const auto a = conservation_report(solve_charge(u0, charge_config(1e-3)), u0);
  const auto b = conservation_report(solve_charge(u0, charge_config(5e-4)), u0);
  const double ratio = a.max_energy_drift / b.max_energy_drift;
  return {a.max_energy_drift <= 1e-4 && ratio >= 3.0 && ratio <= 5.0,
          "drift " + fmt(a.max_energy_drift) + ", ratio " + fmt(ratio)};
}

Outcome cgl_dissipation() {
  SolverConfig c;
  c.gamma = 0.3;
  c.epsilon = 0.25;
  c.T = 1.0;
  c.snapshot_stride = 1;
  std::size_t violations = 0;
  for (std::uint64_t seed : {3u, 7u, 11u}) {
    const auto rep = conservation_report(scgl_solve(random_hs_field(1.0, 64, seed), c), 1e-10);
    violations += rep.mass_increases + rep.energy_increases;
  }
  return {violations == 0, std::to_string(violations) + " violations over 3 seeds"};
}

Outcome inviscid_limit() {
  const auto rep = inviscid_sweep(half_plane_wave(64), {0.2, 0.1, 0.05, 0.025}, charge_config(1e-3));
  return {strictly_decreasing(rep.errors), "errors " + join(rep.errors)};
}

Outcome concentration_limit() {
  const auto rep = concentration_sweep(half_plane_wave(256), {0.4, 0.2, 0.1, 0.05}, fine_config(), 0.75);
  const bool ok = strictly_decreasing(rep.errors) && rep.reference_error < rep.errors.front();
  return {ok, "errors " + join(rep.errors) + ", reference " + fmt(rep.reference_error)};
}

Outcome commuting_square() {
  SolverConfig c = fine_config();
  c.snapshot_stride = 5000;
  const auto rep = commuting_diagram(half_plane_wave(256), {0.4, 0.2, 0.1, 0.05}, {0.2, 0.1, 0.05, 0.025}, c);
  const double tol = std::max(rep.path_a.finest_error, rep.path_b.finest_error);
  return {rep.discrepancy <= tol, "discrepancy " + fmt(rep.discrepancy) + " vs " + fmt(tol)};
}

Outcome lorentzian_identity() {
  double worst = 0.0;
  for (double g : {0.05, 0.1, 0.5}) {
    for (int n : {1, 2, 8}) {
      const double closed = lorentzian_l2_sq(g, n);
      worst = std::max(worst, std::abs(lorentzian_l2_sq_quadrature(g, n) - closed) / closed);
    }
  }
  return {worst <= 1e-6, "max relative difference " + fmt(worst)};
}

Outcome indicator_norm() {
  double worst = 0.0;
  for (double a : {0.1, 0.5, 1.0}) {
    for (double s : {0.2, 0.3, 0.45}) {
      const auto n = indicator_hs_norm(a, s);
      worst = std::max(worst, std::abs(n.quadrature - n.closed_form) / n.closed_form);
    }
  }
  const double q = indicator_hs_norm_closed(1.0, 0.25);
  const double sq = q * q;
  // sqrt then square may round by an ulp; the squared formula itself is exact.
  const bool exact = std::abs(sq - 17.0) <= 2.0 * (std::nextafter(17.0, 18.0) - 17.0);
  return {worst <= 1e-4 && exact, "max relative difference " + fmt(worst) + ", closed form^2 " + fmt(sq)};
}

Outcome kernel_convergence() {
  const TimeWindow w = TimeWindow::resolving(64);
  std::vector<double> d;
  for (double g : {0.2, 0.1, 0.05, 0.025}) d.push_back(kernel_difference_norm(g, 64, 0.45, w));
  return {strictly_decreasing(d), "norms " + join(d)};
}

Outcome kernel_uniformity() {
  const TimeWindow w = TimeWindow::resolving(128);
  double lo = INFINITY, hi = 0.0;
  for (double g : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const double v = windowed_kernel_sobolev_norm({g, 128}, 0.49, w).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {hi / lo <= 3.0, "max/min " + fmt(hi / lo)};
}

Outcome combinatorial_lemma() {
  std::vector<double> m;
  for (int i = 1; i <= 200; ++i) m.push_back(i);
  const auto irr = irrational_samples(50);
  m.insert(m.end(), irr.begin(), irr.end());
  const double b = combinatorial_bound(m, 200000);
  auto seq = [](int k) { return 1.0 / (1.0 + static_cast<double>(k) * k); };
  const double s1 = full_summability_check(seq, 64, 3);
  const double s2 = full_summability_check(seq, 128, 3);
  const double change = std::abs(s2 - s1) / s2;
  return {b <= 6.0 && change <= 0.02, "bound " + fmt(b) + ", summability change " + fmt(change)};
}

Outcome mass_identity_check() {
  const auto u0 = half_plane_wave(64);
  const auto a = mass_identity(u0, solve_charge(u0, charge_config(1e-3)), 0.5);
  const auto b = mass_identity(u0, solve_charge(u0, charge_config(5e-4)), 0.5);
  const double ratio = a.residual / b.residual;
  return {a.residual <= 1e-6 && ratio >= 3.0 && ratio <= 5.0,
          "residual " + fmt(a.residual) + ", ratio " + fmt(ratio)};
}

Outcome substep_oracle() {
  double worst = 0.0;
  for (double a : {0.3, 1.0}) {
    for (double r0 : {0.5, 1.0, 2.0}) {
      for (double g : {0.1, 0.5}) {
        for (double p : {1.0, 2.0}) {
          for (double dt : {0.01, 0.1}) {
            const cplx u = std::polar(r0, 0.3);
            worst = std::max(worst, std::abs(scgl_substep(u, a, dt, 1.0, p, g) -
                                             oracle::cgl_pointwise_rk4(u, a, dt, 1.0, p, g, 4000)));
          }
        }
      }
    }
  }
  return {worst <= 1e-8, "max difference " + fmt(worst)};
}

Outcome wiener_diagnostic() {
  // Initial data fixed at cutoff 64; only the solver truncation doubles.
  const auto u0 = random_hs_field(0.75, 64, 11);
  double w[2];
  int i = 0;
  for (int N : {64, 128}) {
    VolterraConfig c = charge_config(1e-3);
    c.N = N;
    w[i++] = wiener_norm(reconstruct_field(u0, solve_charge(u0, c), 0.5, N));
  }
  const double change = std::abs(w[1] - w[0]) / w[0];
  return {change <= 0.02, "relative change " + fmt(change)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"sNLS mass conservation", 10, mass_conservation},
      {"cNLS energy conservation", 30, energy_conservation},
      {"sCGL dissipation", 10, cgl_dissipation},
      {"inviscid limit", 60, inviscid_limit},
      {"concentration limit", 120, concentration_limit},
      {"commuting diagram", 120, commuting_square},
      {"Lorentzian identity", 5, lorentzian_identity},
      {"indicator norm", 10, indicator_norm},
      {"kernel convergence", 60, kernel_convergence},
      {"kernel uniformity", 60, kernel_uniformity},
      {"combinatorial bound", 120, combinatorial_lemma},
      {"mass identity", 30, mass_identity_check},
      {"sCGL substep oracle", 5, substep_oracle},
      {"Wiener diagnostic", 60, wiener_diagnostic},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += ", over budget " + fmt(c.budget_seconds) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu. %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
