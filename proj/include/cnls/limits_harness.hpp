#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <future>
#include <optional>
#include <functional>
#include <string>
#include <vector>

#include "cnls/charge_solver.hpp"
#include "cnls/pde_solvers.hpp"
#include "cnls/spectral_field.hpp"

namespace cnls {

struct ConvergenceReport {
  std::string parameter;  ///< "epsilon" or "gamma"
  std::string metric;     ///< norm used for the errors
  std::vector<double> ladder;
  /// concentration: distance between rung r and r+1; inviscid: rung r to gamma = 0.
  std::vector<double> errors;
  /// Finest rung against the reference solution (charge reconstruction or q at gamma = 0).
  double reference_error = 0.0;
  bool monotone = true;
  /// log(e_r / e_{r+1}) / log(h_r / h_{r+1}) from the two finest errors; NaN if unavailable.
  double richardson_rate = 0.0;
  std::vector<double> runtime_seconds;
};

/// Worker count for sweeps: CNLS_THREADS if set and positive, otherwise the
/// hardware concurrency.
unsigned sweep_threads();

/// Runs fn(0..n-1) on up to sweep_threads() workers. Results are stored by
/// index, so the output does not depend on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) slots[i].emplace(fn(i));
  };
  const std::size_t workers = std::min<std::size_t>(sweep_threads(), n);
  std::vector<std::future<void>> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
  std::exception_ptr failure;
  try {
    worker();
  } catch (...) {
    failure = std::current_exception();
    next = n;
  }
  for (auto& f : pool) {
    try {
      f.get();
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// sNLS runs over a decreasing epsilon ladder; errors are max over snapshot
/// times of the H^s distance between consecutive rungs. The finest rung is
/// compared with the charge-solver reconstruction built from the same N, dt,
/// T, lambda, p and x0. Requires s in (1/2, 1).
ConvergenceReport concentration_sweep(const SpectralField& u0, const std::vector<double>& eps_ladder,
                                      const SolverConfig& base, double s_metric = 0.75);

/// Charge solves over a decreasing positive gamma ladder; errors are
/// sup over the grid of |q^gamma - q^0|.
ConvergenceReport inviscid_sweep(const SpectralField& u0, const std::vector<double>& gamma_ladder,
                                 const VolterraConfig& base);

/// sup_j |a_j - b_j| over equal-length traces.
double sup_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Limit of a one-parameter family of traces by Richardson extrapolation
/// from the three finest rungs (order estimated, falling back to 1), or from
/// the two finest with order 1 if only two exist.
struct ExtrapolatedLimit {
  std::vector<cplx> limit;
  double order = 1.0;
  /// sup |finest - limit|
  double finest_error = 0.0;
};
ExtrapolatedLimit richardson_limit(const std::vector<double>& ladder,
                                   const std::vector<std::vector<cplx>>& traces);

struct DiagramReport {
  std::vector<double> times;
  std::vector<double> eps_ladder;
  std::vector<double> gamma_ladder;
  /// Path A: cCGL charges q^gamma (epsilon already at 0), then gamma -> 0.
  ExtrapolatedLimit path_a;
  /// Path B: sNLS traces u^eps(x0, t) (gamma already at 0), then eps -> 0.
  ExtrapolatedLimit path_b;
  std::vector<double> path_a_rung_errors;  ///< sup |q^gamma - q^0| per rung
  std::vector<double> path_b_rung_errors;  ///< sup |u^eps(x0) - q^0| per rung
  double discrepancy = 0.0;                ///< sup |limit_A - limit_B|
  double finest_rung_gap = 0.0;            ///< sup |q^{gamma_min} - u^{eps_min}(x0)|
  double path_a_to_reference = 0.0;        ///< sup |limit_A - q^0|
  double path_b_to_reference = 0.0;        ///< sup |limit_B - q^0|
  /// discrepancy <= max(path_a.finest_error, path_b.finest_error)
  bool commutes = false;
};

/// Both limits of the square towards the cNLS charge q^0. base supplies
/// N, dt, T, lambda, p, x0 for every solve; base.epsilon and base.gamma are
/// ignored.
DiagramReport commuting_diagram(const SpectralField& u0, const std::vector<double>& eps_ladder,
                                const std::vector<double>& gamma_ladder, const SolverConfig& base);

/// H^{-s} norm at time t of the mild-equation defect
///   u_c(t) - S_gamma(t) u0 + (gamma+i) lambda kappa int_0^t S_gamma(t-t') delta_{x0} |q_c|^{2p} q_c dt'
/// for a candidate with charge trace q_c on the grid j dt and field u_c(t).
/// The Duhamel integral uses the solver's Filon panels. Requires s in (1/2, 1).
struct MildCandidate {
  double dt = 0.0;
  std::vector<cplx> trace;
  SpectralField field_at_t;
};
double mild_residual(const MildCandidate& candidate, const SpectralField& u0, double t, int N, double s,
                     const VolterraConfig& model);

/// Same with the candidate taken from a charge trajectory and its reconstruction.
double mild_residual(const ChargeTrajectory& charge, const SpectralField& u0, double t, int N, double s);

struct ConservationReport {
  std::size_t samples = 0;
  double max_mass_drift = 0.0;    ///< max |M(t) - M(0)| / M(0), 0 for zero data
  double max_energy_drift = 0.0;  ///< max |E(t) - E(0)| / |E(0)|, 0 for zero data
  std::size_t mass_increases = 0;    ///< steps with M(t_{j+1}) > M(t_j) + slack
  std::size_t energy_increases = 0;  ///< same for E
  double slack = 0.0;
};

/// Observables of an sNLS or sCGL trajectory (E is the mollified energy).
ConservationReport conservation_report(const Trajectory& traj, double slack = 1e-10);

/// Reconstructed cNLS/cCGL fields every `stride` grid steps; E = kinetic + lambda |q|^{2p+2}/(p+1).
ConservationReport conservation_report(const ChargeTrajectory& charge, const SpectralField& u0,
                                       std::size_t stride = 1, double slack = 1e-8);

}  // namespace cnls
