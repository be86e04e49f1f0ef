#pragma once

#include <cstddef>
#include <vector>

#include "cnls/spectral_field.hpp"

namespace cnls {

/// Normalizing constant int_{-1}^{1} e^{-1/(1-y^2)} dy of the base bump.
inline constexpr double kBumpMass = 0.4439938161680794;

/// V^eps(x) = V(x/eps)/eps periodized on the torus and centred at x0, with
/// V(y) = e^{-1/(1-y^2)}/kBumpMass on (-1, 1).
class Mollifier {
 public:
  /// Requires eps in (0, 1] and N >= 8.
  static Mollifier build(double epsilon, int mode_cutoff, double x0 = 0.0);
  /// V = 0; turns every solver into the free flow.
  static Mollifier vanishing(int mode_cutoff, double x0 = 0.0);

  double epsilon() const noexcept { return epsilon_; }
  double x0() const noexcept { return x0_; }
  int mode_cutoff() const noexcept { return coeffs_.mode_cutoff(); }
  /// Fourier coefficients, rescaled so that c_0 = 1/(2pi).
  const SpectralField& coefficients() const noexcept { return coeffs_; }
  /// |2pi c_0 - 1| before rescaling.
  double normalization_residual() const noexcept { return residual_; }

  /// Point value of V^eps at x (periodic distance to x0).
  double density(double x) const;
  /// density at x_j = 2pi j/M.
  std::vector<double> grid_values(std::size_t M) const;

 private:
  double epsilon_ = 1.0;
  double x0_ = 0.0;
  double scale_ = 0.0;  // multiplies V(y)/eps; 0 for the vanishing mollifier
  double residual_ = 0.0;
  SpectralField coeffs_;
};

inline Mollifier build_mollifier(double epsilon, int mode_cutoff, double x0 = 0.0) {
  return Mollifier::build(epsilon, mode_cutoff, x0);
}

struct SolverConfig {
  int N = 64;
  double dt = 1e-3;
  double T = 0.5;
  double epsilon = 0.1;
  double gamma = 0.0;
  /// +1 defocusing, -1 focusing, 0 linear.
  double lambda = 1.0;
  double p = 1.0;
  /// Nonlinear substep on 2(2N+1) points instead of the 2N+1 collocation grid.
  bool dealias = false;
  double x0 = 0.0;
  /// Keep every k-th field; the initial and final fields are always kept.
  int snapshot_stride = 10;
  double blowup_threshold = 1e6;

  /// Number of steps T/dt; throws std::invalid_argument when T is not a
  /// multiple of dt or any field is out of range.
  std::size_t steps() const;
  void validate(bool cgl) const;
};

struct Trajectory {
  SolverConfig config;
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy_eps;
  std::vector<double> abs_u0;
  /// u(x0, t) at every step.
  std::vector<cplx> u_x0;
  std::vector<double> snapshot_times;
  std::vector<SpectralField> snapshots;

  const SpectralField& final_field() const { return snapshots.back(); }
};

/// Exact flow of i u' = lambda a |u|^{2p} u over dt.
cplx snls_substep(cplx u, double a, double dt, double lambda, double p);

/// Exact flow of u' = -(gamma + i) lambda a |u|^{2p} u over dt. Throws
/// SolverError(SubstepSingular) when 1 + 2p gamma lambda a |u|^{2p} dt <= 0.
cplx scgl_substep(cplx u, double a, double dt, double lambda, double p, double gamma);

/// One Strang step. dt may be negative (the flow is reversible).
SpectralField snls_step(const SpectralField& field, double dt, const Mollifier& moll,
                        double lambda, double p, bool dealias = false);

/// One Strang step with Ginzburg-Landau half-steps. Requires gamma > 0, dt > 0.
SpectralField scgl_step(const SpectralField& field, double dt, const Mollifier& moll,
                        double lambda, double p, double gamma, bool dealias = false);

/// kinetic + lambda/(p+1) int V^eps |u|^{2p+2}, the integral by the rectangle
/// rule on the nonlinear-substep grid.
double mollified_energy(const SpectralField& field, const Mollifier& moll, double lambda,
                        double p, bool dealias = false);

/// 1/(p+1) int V^eps |u|^{2p+2} on the same grid.
double mollified_potential(const SpectralField& field, const Mollifier& moll, double p,
                           bool dealias = false);

/// Requires config.gamma == 0. Throws SolverError on NonFinite or BlowUpDetected.
Trajectory snls_solve(const SpectralField& u0, const SolverConfig& config);

/// Requires config.gamma > 0.
Trajectory scgl_solve(const SpectralField& u0, const SolverConfig& config);

/// Solution on [-T, 0], times decreasing from 0. Solves forward from conj(u0)
/// and conjugates, so the CGL damping always acts forward in |t|.
Trajectory solve_backward(const SpectralField& u0, const SolverConfig& config);

}  // namespace cnls
