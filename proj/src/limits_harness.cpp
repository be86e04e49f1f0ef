#include "cnls/limits_harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cnls {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_decreasing(const std::vector<double>& ladder, bool positive, const char* what) {
  if (ladder.empty()) throw std::invalid_argument(std::string(what) + " ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (positive && !(ladder[i] > 0.0)) throw std::invalid_argument(std::string(what) + " ladder must be positive");
    if (i > 0 && !(ladder[i] < ladder[i - 1])) {
      throw std::invalid_argument(std::string(what) + " ladder must be strictly decreasing");
    }
  }
}

bool strictly_decreasing(const std::vector<double>& e) {
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (!(e[i] < e[i - 1]) && !(e[i] == 0.0 && e[i - 1] == 0.0)) return false;
  }
  return true;
}

double observed_rate(const std::vector<double>& ladder_steps, const std::vector<double>& errors) {
  if (errors.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t i = errors.size() - 1;
  const double e0 = errors[i - 1];
  const double e1 = errors[i];
  if (!(e0 > 0.0 && e1 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(e0 / e1) / std::log(ladder_steps[i - 1] / ladder_steps[i]);
}

VolterraConfig charge_config(const SolverConfig& s) {
  VolterraConfig v;
  v.dt = s.dt;
  v.T = s.T;
  v.N = s.N;
  v.lambda = s.lambda;
  v.p = s.p;
  v.x0 = s.x0;
  v.blowup_threshold = s.blowup_threshold;
  return v;
}

std::vector<std::size_t> snapshot_steps(const Trajectory& tr) {
  std::vector<std::size_t> steps;
  for (double t : tr.snapshot_times) steps.push_back(static_cast<std::size_t>(std::llround(t / tr.config.dt)));
  return steps;
}

}  // namespace

unsigned sweep_threads() {
  if (const char* env = std::getenv("CNLS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

double sup_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("traces have different lengths");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ConvergenceReport concentration_sweep(const SpectralField& u0, const std::vector<double>& eps_ladder,
                                      const SolverConfig& base, double s_metric) {
  require_decreasing(eps_ladder, true, "epsilon");
  if (!(s_metric > 0.5 && s_metric < 1.0)) throw std::invalid_argument("metric exponent must lie in (1/2, 1)");

  struct Rung {
    Trajectory traj;
    double seconds;
  };
  const auto rungs = parallel_map<Rung>(eps_ladder.size(), [&](std::size_t r) {
    const auto start = Clock::now();
    SolverConfig cfg = base;
    cfg.gamma = 0.0;
    cfg.epsilon = eps_ladder[r];
    Trajectory tr = snls_solve(u0, cfg);
    return Rung{std::move(tr), seconds_since(start)};
  });

  ConvergenceReport rep;
  rep.parameter = "epsilon";
  {
    std::ostringstream label;
    label << "max_t H^" << s_metric;
    rep.metric = label.str();
  }
  rep.ladder = eps_ladder;
  for (const auto& r : rungs) rep.runtime_seconds.push_back(r.seconds);
  for (std::size_t r = 0; r + 1 < rungs.size(); ++r) {
    const auto& a = rungs[r].traj.snapshots;
    const auto& b = rungs[r + 1].traj.snapshots;
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, hs_distance(a[i], b[i], s_metric));
    rep.errors.push_back(e);
  }

  const auto start = Clock::now();
  const Trajectory& finest = rungs.back().traj;
  const ChargeTrajectory charge = solve_charge(u0, charge_config(base));
  const auto reference = reconstruct_series(u0, charge, snapshot_steps(finest), base.N);
  double dref = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    dref = std::max(dref, hs_distance(finest.snapshots[i], reference[i], s_metric));
  }
  rep.reference_error = dref;
  rep.runtime_seconds.push_back(seconds_since(start));
  rep.monotone = strictly_decreasing(rep.errors);
  rep.richardson_rate = observed_rate(eps_ladder, rep.errors);
  return rep;
}

ConvergenceReport inviscid_sweep(const SpectralField& u0, const std::vector<double>& gamma_ladder,
                                 const VolterraConfig& base) {
  require_decreasing(gamma_ladder, true, "gamma");
  // Index 0 is the gamma = 0 reference, the rest follow the ladder.
  struct Rung {
    ChargeTrajectory charge;
    double seconds;
  };
  const auto rungs = parallel_map<Rung>(gamma_ladder.size() + 1, [&](std::size_t r) {
    const auto start = Clock::now();
    VolterraConfig cfg = base;
    cfg.gamma = r == 0 ? 0.0 : gamma_ladder[r - 1];
    ChargeTrajectory ch = solve_charge(u0, cfg);
    return Rung{std::move(ch), seconds_since(start)};
  });

  ConvergenceReport rep;
  rep.parameter = "gamma";
  rep.metric = "sup_t |q^gamma - q^0|";
  rep.ladder = gamma_ladder;
  for (std::size_t r = 1; r < rungs.size(); ++r) {
    rep.errors.push_back(sup_distance(rungs[r].charge.q, rungs[0].charge.q));
    rep.runtime_seconds.push_back(rungs[r].seconds);
  }
  rep.runtime_seconds.push_back(rungs[0].seconds);
  rep.reference_error = rep.errors.back();
  rep.monotone = strictly_decreasing(rep.errors);
  rep.richardson_rate = observed_rate(gamma_ladder, rep.errors);
  return rep;
}

ExtrapolatedLimit richardson_limit(const std::vector<double>& ladder,
                                   const std::vector<std::vector<cplx>>& traces) {
  if (ladder.size() != traces.size() || traces.empty()) {
    throw std::invalid_argument("ladder and traces must be non-empty and of equal length");
  }
  ExtrapolatedLimit out;
  const std::size_t n = traces.size();
  if (n == 1) {
    out.limit = traces[0];
    return out;
  }
  const auto& b = traces[n - 2];
  const auto& c = traces[n - 1];
  const double ratio = ladder[n - 2] / ladder[n - 1];
  double order = 1.0;
  if (n >= 3) {
    const double d_ab = sup_distance(traces[n - 3], b);
    const double d_bc = sup_distance(b, c);
    const double ratio_ab = ladder[n - 3] / ladder[n - 2];
    if (d_ab > 0.0 && d_bc > 0.0 && std::abs(ratio_ab - ratio) < 1e-9 * ratio) {
      const double est = std::log(d_ab / d_bc) / std::log(ratio);
      if (std::isfinite(est) && est >= 0.5 && est <= 4.0) order = est;
    }
  }
  out.order = order;
  const double denom = std::pow(ratio, order) - 1.0;
  out.limit.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out.limit[i] = c[i] + (c[i] - b[i]) / denom;
  out.finest_error = sup_distance(c, out.limit);
  return out;
}

DiagramReport commuting_diagram(const SpectralField& u0, const std::vector<double>& eps_ladder,
                                const std::vector<double>& gamma_ladder, const SolverConfig& base) {
  require_decreasing(eps_ladder, true, "epsilon");
  require_decreasing(gamma_ladder, true, "gamma");
  const std::size_t ne = eps_ladder.size();
  const std::size_t ng = gamma_ladder.size();

  // Jobs: [0, ng) charges with gamma, ng the gamma = 0 reference, then sNLS rungs.
  const auto traces = parallel_map<std::vector<cplx>>(ng + 1 + ne, [&](std::size_t r) {
    if (r <= ng) {
      VolterraConfig cfg = charge_config(base);
      cfg.gamma = r < ng ? gamma_ladder[r] : 0.0;
      return solve_charge(u0, cfg).q;
    }
    SolverConfig cfg = base;
    cfg.gamma = 0.0;
    cfg.epsilon = eps_ladder[r - ng - 1];
    cfg.snapshot_stride = std::numeric_limits<int>::max();
    return snls_solve(u0, cfg).u_x0;
  });

  const std::vector<std::vector<cplx>> path_a(traces.begin(), traces.begin() + static_cast<long>(ng));
  const std::vector<cplx>& reference = traces[ng];
  const std::vector<std::vector<cplx>> path_b(traces.begin() + static_cast<long>(ng) + 1, traces.end());

  DiagramReport rep;
  rep.times.resize(reference.size());
  for (std::size_t j = 0; j < reference.size(); ++j) rep.times[j] = static_cast<double>(j) * base.dt;
  rep.eps_ladder = eps_ladder;
  rep.gamma_ladder = gamma_ladder;
  rep.path_a = richardson_limit(gamma_ladder, path_a);
  rep.path_b = richardson_limit(eps_ladder, path_b);
  for (const auto& q : path_a) rep.path_a_rung_errors.push_back(sup_distance(q, reference));
  for (const auto& q : path_b) rep.path_b_rung_errors.push_back(sup_distance(q, reference));
  rep.discrepancy = sup_distance(rep.path_a.limit, rep.path_b.limit);
  rep.finest_rung_gap = sup_distance(path_a.back(), path_b.back());
  rep.path_a_to_reference = sup_distance(rep.path_a.limit, reference);
  rep.path_b_to_reference = sup_distance(rep.path_b.limit, reference);
  rep.commutes = rep.discrepancy <= std::max(rep.path_a.finest_error, rep.path_b.finest_error);
  return rep;
}

double mild_residual(const MildCandidate& candidate, const SpectralField& u0, double t, int N, double s,
                     const VolterraConfig& model) {
  if (!(s > 0.5 && s < 1.0)) throw std::invalid_argument("residual exponent must lie in (1/2, 1)");
  if (N < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  ChargeTrajectory view;
  view.config = model;
  view.config.dt = candidate.dt;
  view.config.T = candidate.dt * static_cast<double>(candidate.trace.empty() ? 0 : candidate.trace.size() - 1);
  view.q = candidate.trace;
  view.times.resize(candidate.trace.size());
  for (std::size_t j = 0; j < view.times.size(); ++j) view.times[j] = static_cast<double>(j) * candidate.dt;
  const std::size_t j = view.index_of(t);

  ChargeReplay replay(view, N);
  while (replay.step() < j) replay.advance();
  // replay.field is S_gamma(t)u0 plus the Duhamel term built from the candidate trace.
  const SpectralField mild = replay.field(u0.with_cutoff(N));
  return hs_distance(candidate.field_at_t.with_cutoff(N), mild, -s);
}

double mild_residual(const ChargeTrajectory& charge, const SpectralField& u0, double t, int N, double s) {
  MildCandidate c;
  c.dt = charge.config.dt;
  c.trace = charge.q;
  c.field_at_t = reconstruct_field(u0, charge, t, N);
  return mild_residual(c, u0, t, N, s, charge.config);
}

ConservationReport conservation_report(const Trajectory& traj, double slack) {
  ConservationReport r;
  r.slack = slack;
  r.samples = traj.times.size();
  if (traj.times.empty()) return r;
  const double m0 = traj.mass.front();
  const double e0 = traj.energy_eps.front();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (m0 > 0.0) r.max_mass_drift = std::max(r.max_mass_drift, std::abs(traj.mass[i] - m0) / m0);
    if (e0 != 0.0) r.max_energy_drift = std::max(r.max_energy_drift, std::abs(traj.energy_eps[i] - e0) / std::abs(e0));
    if (i > 0) {
      if (traj.mass[i] > traj.mass[i - 1] + slack) ++r.mass_increases;
      if (traj.energy_eps[i] > traj.energy_eps[i - 1] + slack) ++r.energy_increases;
    }
  }
  return r;
}

ConservationReport conservation_report(const ChargeTrajectory& charge, const SpectralField& u0,
                                       std::size_t stride, double slack) {
  if (stride == 0) throw std::invalid_argument("stride must be >= 1");
  const auto& cfg = charge.config;
  std::vector<std::size_t> steps;
  for (std::size_t j = 0; j < charge.q.size(); j += stride) steps.push_back(j);
  if (!charge.q.empty() && steps.back() != charge.q.size() - 1) steps.push_back(charge.q.size() - 1);

  std::vector<double> mass_series;
  std::vector<double> energy_series;
  ChargeReplay replay(charge, cfg.N);
  for (std::size_t target : steps) {
    while (replay.step() < target) replay.advance();
    const SpectralField f = replay.field(u0);
    const Functionals fn = energy(f, cfg.p, cfg.x0);
    mass_series.push_back(fn.mass);
    energy_series.push_back(fn.kinetic + cfg.lambda * fn.potential);
  }

  ConservationReport r;
  r.slack = slack;
  r.samples = steps.size();
  if (steps.empty()) return r;
  const double m0 = mass_series.front();
  const double e0 = energy_series.front();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (m0 > 0.0) r.max_mass_drift = std::max(r.max_mass_drift, std::abs(mass_series[i] - m0) / m0);
    if (e0 != 0.0) r.max_energy_drift = std::max(r.max_energy_drift, std::abs(energy_series[i] - e0) / std::abs(e0));
    if (i > 0) {
      if (mass_series[i] > mass_series[i - 1] + slack) ++r.mass_increases;
      if (energy_series[i] > energy_series[i - 1] + slack) ++r.energy_increases;
    }
  }
  return r;
}

}  // namespace cnls
