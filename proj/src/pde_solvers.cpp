#include "cnls/pde_solvers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cnls/error.hpp"
#include "cnls/fft.hpp"

namespace cnls {

namespace {

std::size_t grid_size(int N, bool dealias) {
  const auto base = static_cast<std::size_t>(2 * N + 1);
  return dealias ? 2 * base : base;
}

void require_lambda(double lambda) {
  if (lambda != 1.0 && lambda != -1.0 && lambda != 0.0) {
    throw std::invalid_argument("lambda must be +1, -1 or 0");
  }
}

void require_power(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("nonlinearity power p must be >= 1");
}

// Splitting integrator for one cutoff, grid and set of coefficients.
class Stepper {
 public:
  Stepper(int N, const Mollifier& moll, double lambda, double p, double gamma, bool dealias)
      : N_(N), lambda_(lambda), p_(p), gamma_(gamma), fft_(grid_size(N, dealias)),
        potential_(moll.grid_values(grid_size(N, dealias))) {
    require_lambda(lambda);
    require_power(p);
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    for (double v : potential_) active_ = active_ || v != 0.0;
  }

  std::size_t grid_points() const { return fft_.size(); }

  void step(std::vector<cplx>& c, double dt) {
    linear_half(c, dt);
    if (lambda_ != 0.0 && active_) {
      coeffs_to_grid(c, N_, fft_, grid_);
      for (std::size_t j = 0; j < grid_.size(); ++j) {
        const double a = potential_[j];
        if (a == 0.0) continue;
        grid_[j] = gamma_ == 0.0 ? snls_substep(grid_[j], a, dt, lambda_, p_)
                                 : scgl_substep(grid_[j], a, dt, lambda_, p_, gamma_);
      }
      grid_to_coeffs(grid_, N_, fft_, c);
    }
    linear_half(c, dt);
  }

  // (1/(p+1)) (2pi/M) sum V |u|^{2p+2}
  double potential(const std::vector<cplx>& c) {
    coeffs_to_grid(c, N_, fft_, grid_);
    double acc = 0.0;
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      if (potential_[j] == 0.0) continue;
      acc += potential_[j] * std::pow(std::norm(grid_[j]), p_ + 1.0);
    }
    return acc * kTwoPi / static_cast<double>(grid_.size()) / (p_ + 1.0);
  }

  double energy(const std::vector<cplx>& c) {
    double kin = 0.0;
    for (int n = -N_; n <= N_; ++n) {
      kin += static_cast<double>(n) * n * std::norm(c[static_cast<std::size_t>(n + N_)]);
    }
    const double pot = lambda_ == 0.0 ? 0.0 : lambda_ * potential(c);
    return kTwoPi * kin + pot;
  }

 private:
  void linear_half(std::vector<cplx>& c, double dt) {
    if (half_dt_ != dt || half_.empty()) {
      half_dt_ = dt;
      half_.resize(c.size());
      const double h = dt / 2.0;
      for (int n = -N_; n <= N_; ++n) {
        const double w = static_cast<double>(n) * n;
        half_[static_cast<std::size_t>(n + N_)] = std::polar(std::exp(-gamma_ * w * std::abs(h)), -w * h);
      }
    }
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= half_[i];
  }

  int N_;
  double lambda_;
  double p_;
  double gamma_;
  Fft fft_;
  std::vector<double> potential_;
  std::vector<cplx> grid_;
  std::vector<cplx> half_;
  double half_dt_ = 0.0;
  bool active_ = false;  // V not identically zero
};

bool all_finite(const std::vector<cplx>& c) {
  for (const auto& z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

cplx value_at(const std::vector<cplx>& c, int N, double x0) {
  cplx sum{};
  if (x0 == 0.0) {
    for (const auto& z : c) sum += z;
    return sum;
  }
  for (int n = -N; n <= N; ++n) sum += c[static_cast<std::size_t>(n + N)] * std::polar(1.0, n * x0);
  return sum;
}

Trajectory solve(const SpectralField& u0, const SolverConfig& cfg, bool cgl) {
  cfg.validate(cgl);
  const std::size_t steps = cfg.steps();
  const SpectralField start = u0.with_cutoff(cfg.N);
  const Mollifier moll = Mollifier::build(cfg.epsilon, cfg.N, cfg.x0);
  Stepper stepper(cfg.N, moll, cfg.lambda, cfg.p, cgl ? cfg.gamma : 0.0, cfg.dealias);

  Trajectory tr;
  tr.config = cfg;
  tr.times.reserve(steps + 1);
  std::vector<cplx> c(start.coeffs().begin(), start.coeffs().end());

  auto record = [&](std::size_t j) {
    const double t = static_cast<double>(j) * cfg.dt;
    tr.times.push_back(t);
    tr.mass.push_back(mass(SpectralField(cfg.N, c)));
    tr.energy_eps.push_back(stepper.energy(c));
    const cplx v = value_at(c, cfg.N, cfg.x0);
    tr.u_x0.push_back(v);
    tr.abs_u0.push_back(std::abs(v));
    if (j % static_cast<std::size_t>(cfg.snapshot_stride) == 0 || j == steps) {
      tr.snapshot_times.push_back(t);
      tr.snapshots.emplace_back(cfg.N, c);
    }
  };

  record(0);
  for (std::size_t j = 1; j <= steps; ++j) {
    stepper.step(c, cfg.dt);
    if (!all_finite(c)) {
      throw SolverError(ErrorKind::NonFinite, "field became non-finite at step " + std::to_string(j));
    }
    const double amp = std::abs(value_at(c, cfg.N, cfg.x0));
    if (amp > cfg.blowup_threshold) {
      throw SolverError(ErrorKind::BlowUpDetected,
                        "|u(x0)| = " + std::to_string(amp) + " at t = " + std::to_string(j * cfg.dt));
    }
    record(j);
  }
  return tr;
}

}  // namespace

std::size_t SolverConfig::steps() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be >= 0");
  const double ratio = T / dt;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("T must be an integer multiple of dt");
  }
  return static_cast<std::size_t>(n);
}

void SolverConfig::validate(bool cgl) const {
  if (N < 8) throw std::invalid_argument("N must be >= 8");
  steps();
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  require_lambda(lambda);
  require_power(p);
  if (snapshot_stride < 1) throw std::invalid_argument("snapshot stride must be >= 1");
  if (!(blowup_threshold > 0.0)) throw std::invalid_argument("blow-up threshold must be > 0");
  if (cgl && !(gamma > 0.0)) throw std::invalid_argument("sCGL needs gamma > 0");
  if (!cgl && gamma != 0.0) throw std::invalid_argument("sNLS needs gamma = 0");
}

cplx snls_substep(cplx u, double a, double dt, double lambda, double p) {
  return u * std::polar(1.0, -lambda * dt * a * std::pow(std::norm(u), p));
}

cplx scgl_substep(cplx u, double a, double dt, double lambda, double p, double gamma) {
  const double x = 2.0 * p * gamma * lambda * a * std::pow(std::norm(u), p) * dt;
  if (!(1.0 + x > 0.0)) {
    throw SolverError(ErrorKind::SubstepSingular, "pointwise focusing blow-up inside the nonlinear substep");
  }
  const double l = std::log1p(x);
  return u * std::polar(std::exp(-l / (2.0 * p)), -l / (2.0 * p * gamma));
}

SpectralField snls_step(const SpectralField& field, double dt, const Mollifier& moll, double lambda,
                        double p, bool dealias) {
  Stepper s(field.mode_cutoff(), moll, lambda, p, 0.0, dealias);
  std::vector<cplx> c(field.coeffs().begin(), field.coeffs().end());
  s.step(c, dt);
  return SpectralField(field.mode_cutoff(), std::move(c));
}

SpectralField scgl_step(const SpectralField& field, double dt, const Mollifier& moll, double lambda,
                        double p, double gamma, bool dealias) {
  if (!(gamma > 0.0)) throw std::invalid_argument("sCGL needs gamma > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("sCGL only steps forward in time");
  Stepper s(field.mode_cutoff(), moll, lambda, p, gamma, dealias);
  std::vector<cplx> c(field.coeffs().begin(), field.coeffs().end());
  s.step(c, dt);
  return SpectralField(field.mode_cutoff(), std::move(c));
}

double mollified_energy(const SpectralField& field, const Mollifier& moll, double lambda, double p,
                        bool dealias) {
  Stepper s(field.mode_cutoff(), moll, lambda, p, 0.0, dealias);
  return s.energy(std::vector<cplx>(field.coeffs().begin(), field.coeffs().end()));
}

double mollified_potential(const SpectralField& field, const Mollifier& moll, double p, bool dealias) {
  Stepper s(field.mode_cutoff(), moll, 1.0, p, 0.0, dealias);
  return s.potential(std::vector<cplx>(field.coeffs().begin(), field.coeffs().end()));
}

Trajectory snls_solve(const SpectralField& u0, const SolverConfig& config) {
  return solve(u0, config, false);
}

Trajectory scgl_solve(const SpectralField& u0, const SolverConfig& config) {
  return solve(u0, config, true);
}

Trajectory solve_backward(const SpectralField& u0, const SolverConfig& config) {
  std::vector<cplx> c(u0.coeffs().begin(), u0.coeffs().end());
  const int N = u0.mode_cutoff();
  // conj(u)(x) has coefficients conj(c_{-n}).
  std::vector<cplx> r(c.size());
  for (int n = -N; n <= N; ++n) r[static_cast<std::size_t>(n + N)] = std::conj(c[static_cast<std::size_t>(N - n)]);
  Trajectory tr = solve(SpectralField(N, std::move(r)), config, config.gamma > 0.0);
  for (auto& t : tr.times) t = -t;
  for (auto& t : tr.snapshot_times) t = -t;
  for (auto& v : tr.u_x0) v = std::conj(v);
  for (auto& f : tr.snapshots) {
    const int M = f.mode_cutoff();
    std::vector<cplx> b(f.size());
    for (int n = -M; n <= M; ++n) b[static_cast<std::size_t>(n + M)] = std::conj(f.coeff(-n));
    f = SpectralField(M, std::move(b));
  }
  return tr;
}

}  // namespace cnls
