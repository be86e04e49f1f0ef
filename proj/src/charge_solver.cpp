#include "cnls/charge_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cnls/error.hpp"

namespace cnls {

namespace {

cplx rate(double gamma) { return {gamma, 1.0}; }

cplx nonlinearity(cplx q, double lambda, double p) {
  if (lambda == 0.0) return {};
  return lambda * std::pow(std::norm(q), p) * q;
}

std::vector<double> grid_times(double dt, std::size_t steps) {
  std::vector<double> t(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) t[j] = static_cast<double>(j) * dt;
  return t;
}

}  // namespace

std::size_t VolterraConfig::steps() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be >= 0");
  const double ratio = T / dt;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("T must be an integer multiple of dt");
  }
  return static_cast<std::size_t>(n);
}

void VolterraConfig::validate() const {
  steps();
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (lambda != 1.0 && lambda != -1.0 && lambda != 0.0) {
    throw std::invalid_argument("lambda must be +1, -1 or 0");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("nonlinearity power p must be >= 1");
  if (!(picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(blowup_threshold > 0.0)) throw std::invalid_argument("blow-up threshold must be > 0");
}

std::size_t ChargeTrajectory::index_of(double t) const {
  const double dt = config.dt;
  const double r = t / dt;
  const double j = std::round(r);
  if (!(j >= 0.0) || std::abs(r - j) > 1e-9 * std::max(1.0, r) ||
      static_cast<std::size_t>(j) >= times.size()) {
    throw SolverError(ErrorKind::GridMismatch, "t = " + std::to_string(t) + " is not on the charge grid");
  }
  return static_cast<std::size_t>(j);
}

FilonWeights filon_weights(cplx z) {
  if (std::abs(z) < 1.0) {
    cplx w0{}, w1{};
    cplx term{1.0, 0.0};  // (-z)^m / m!
    for (int m = 0; m < 40; ++m) {
      w0 += term / static_cast<double>(m + 2);
      w1 += term / static_cast<double>((m + 1) * (m + 2));
      term *= -z / static_cast<double>(m + 1);
      if (std::abs(term) < 1e-18) break;
    }
    return {w0, w1};
  }
  const cplx e = std::exp(-z);
  const cplx z2 = z * z;
  return {(1.0 - e * (1.0 + z)) / z2, (z - 1.0 + e) / z2};
}

std::vector<cplx> free_trace(const SpectralField& u0, const std::vector<double>& times, double gamma,
                             double x0) {
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  const int N = u0.mode_cutoff();
  std::vector<cplx> base(u0.coeffs().begin(), u0.coeffs().end());
  if (x0 != 0.0) {
    for (int n = -N; n <= N; ++n) base[static_cast<std::size_t>(n + N)] *= std::polar(1.0, n * x0);
  }
  std::vector<cplx> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double t = times[j];
    cplx sum = base[static_cast<std::size_t>(N)];
    for (int n = 1; n <= N; ++n) {
      const double w = static_cast<double>(n) * n;
      const cplx f = std::polar(std::exp(-gamma * w * std::abs(t)), -w * t);
      sum += f * (base[static_cast<std::size_t>(N + n)] + base[static_cast<std::size_t>(N - n)]);
    }
    out[j] = sum;
  }
  return out;
}

ChargeTrajectory solve_charge(const SpectralField& u0, const VolterraConfig& cfg) {
  cfg.validate();
  const std::size_t steps = cfg.steps();
  const int N = cfg.N;
  const double dt = cfg.dt;
  const cplx coupling = -rate(cfg.gamma) * kKappa;

  ChargeTrajectory out;
  out.config = cfg;
  out.times = grid_times(dt, steps);
  const std::vector<cplx> q1 = free_trace(u0.with_cutoff(N), out.times, cfg.gamma, cfg.x0);

  const auto modes = static_cast<std::size_t>(N) + 1;
  std::vector<cplx> decay(modes), w0(modes), w1(modes), acc(modes);
  cplx W0{}, W1{};
  for (std::size_t k = 0; k < modes; ++k) {
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    decay[k] = std::polar(std::exp(-cfg.gamma * k2 * dt), -k2 * dt);
    const FilonWeights w = filon_weights(rate(cfg.gamma) * (k2 * dt));
    w0[k] = w.w0;
    w1[k] = w.w1;
    const double mult = k == 0 ? 1.0 : 2.0;
    W0 += mult * w.w0;
    W1 += mult * w.w1;
  }
  const cplx B = coupling * dt * W1;

  out.q.reserve(steps + 1);
  out.picard_iters.reserve(steps + 1);
  out.q.push_back(q1[0]);
  out.picard_iters.push_back(0);
  cplx F_prev = nonlinearity(q1[0], cfg.lambda, cfg.p);

  for (std::size_t j = 0; j < steps; ++j) {
    cplx memory{};
    for (std::size_t k = 0; k < modes; ++k) memory += (k == 0 ? 1.0 : 2.0) * decay[k] * acc[k];
    const cplx A = q1[j + 1] + coupling * (memory + dt * F_prev * W0);

    cplx q = out.q.back();
    int iters = 0;
    bool converged = false;
    while (iters < cfg.max_iters) {
      ++iters;
      const cplx next = A + B * nonlinearity(q, cfg.lambda, cfg.p);
      const double change = std::abs(next - q);
      q = next;
      if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) {
        throw SolverError(ErrorKind::NonFinite, "charge became non-finite at step " + std::to_string(j + 1));
      }
      if (std::abs(q) > cfg.blowup_threshold) {
        throw SolverError(ErrorKind::BlowUpDetected,
                          "|q| = " + std::to_string(std::abs(q)) + " at t = " + std::to_string(out.times[j + 1]));
      }
      if (change < cfg.picard_tol * std::max(1.0, std::abs(q))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw SolverError(ErrorKind::PicardDiverged,
                        "no convergence in " + std::to_string(cfg.max_iters) + " iterations at step " +
                            std::to_string(j + 1));
    }

    const cplx F_next = nonlinearity(q, cfg.lambda, cfg.p);
    for (std::size_t k = 0; k < modes; ++k) {
      acc[k] = decay[k] * acc[k] + dt * (w0[k] * F_prev + w1[k] * F_next);
    }
    F_prev = F_next;
    out.q.push_back(q);
    out.picard_iters.push_back(iters);
  }
  out.accumulators = std::move(acc);
  return out;
}

ChargeReplay::ChargeReplay(const ChargeTrajectory& charge, int mode_cutoff)
    : charge_(&charge), N_(mode_cutoff) {
  if (mode_cutoff < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  const auto modes = static_cast<std::size_t>(mode_cutoff) + 1;
  const double dt = charge.config.dt;
  const double gamma = charge.config.gamma;
  decay_.resize(modes);
  w0_.resize(modes);
  w1_.resize(modes);
  acc_.assign(modes, cplx{});
  for (std::size_t k = 0; k < modes; ++k) {
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    decay_[k] = std::polar(std::exp(-gamma * k2 * dt), -k2 * dt);
    const FilonWeights w = filon_weights(rate(gamma) * (k2 * dt));
    w0_[k] = w.w0;
    w1_[k] = w.w1;
  }
}

double ChargeReplay::time() const noexcept { return charge_->times[j_]; }

bool ChargeReplay::advance() {
  if (j_ + 1 >= charge_->q.size()) return false;
  const auto& cfg = charge_->config;
  const cplx F0 = nonlinearity(charge_->q[j_], cfg.lambda, cfg.p);
  const cplx F1 = nonlinearity(charge_->q[j_ + 1], cfg.lambda, cfg.p);
  for (std::size_t k = 0; k < acc_.size(); ++k) {
    acc_[k] = decay_[k] * acc_[k] + cfg.dt * (w0_[k] * F0 + w1_[k] * F1);
  }
  ++j_;
  return true;
}

SpectralField ChargeReplay::field(const SpectralField& u0) const {
  const auto& cfg = charge_->config;
  const double t = time();
  const cplx coupling = -rate(cfg.gamma) * kKappa;
  std::vector<cplx> c(static_cast<std::size_t>(2 * N_ + 1));
  for (int k = -N_; k <= N_; ++k) {
    const double k2 = static_cast<double>(k) * k;
    const cplx free = u0.coeff(k) * std::polar(std::exp(-cfg.gamma * k2 * t), -k2 * t);
    const cplx shift = cfg.x0 == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, -k * cfg.x0);
    c[static_cast<std::size_t>(k + N_)] = free + coupling * shift * accumulator(k);
  }
  return SpectralField(N_, std::move(c));
}

std::vector<SpectralField> reconstruct_series(const SpectralField& u0, const ChargeTrajectory& charge,
                                              const std::vector<std::size_t>& steps, int mode_cutoff) {
  ChargeReplay replay(charge, mode_cutoff);
  std::vector<SpectralField> out;
  out.reserve(steps.size());
  for (std::size_t target : steps) {
    if (target >= charge.q.size() || target < replay.step()) {
      throw SolverError(ErrorKind::GridMismatch, "reconstruction steps must be ascending grid indices");
    }
    while (replay.step() < target) replay.advance();
    out.push_back(replay.field(u0));
  }
  return out;
}

SpectralField reconstruct_field(const SpectralField& u0, const ChargeTrajectory& charge, double t,
                                int mode_cutoff) {
  const std::size_t j = charge.index_of(t);
  return reconstruct_series(u0, charge, {j}, mode_cutoff).front();
}

MassIdentity mass_identity(const SpectralField& u0, const ChargeTrajectory& charge, double t) {
  if (charge.config.gamma != 0.0) throw std::invalid_argument("mass identity needs a gamma = 0 trajectory");
  const std::size_t j = charge.index_of(t);
  const int N = charge.config.N;
  ChargeReplay replay(charge, N);
  while (replay.step() < j) replay.advance();

  const cplx coupling = -rate(0.0) * kKappa;
  const double tj = replay.time();
  double cross = 0.0;
  double duhamel = 0.0;
  for (int k = -N; k <= N; ++k) {
    const double k2 = static_cast<double>(k) * k;
    const cplx free = u0.coeff(k) * std::polar(1.0, -k2 * tj);
    const cplx shift = charge.config.x0 == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, -k * charge.config.x0);
    const cplx d = coupling * shift * replay.accumulator(k);
    cross += std::real(std::conj(free) * d);
    duhamel += std::norm(d);
  }
  MassIdentity m;
  m.term_I = mass(u0.with_cutoff(N));
  m.term_II = 2.0 * kTwoPi * cross;
  m.term_III = kTwoPi * duhamel;
  m.residual = std::abs(m.term_II + m.term_III);
  m.mass_defect = std::abs(mass(replay.field(u0)) - m.term_I);
  return m;
}

}  // namespace cnls
