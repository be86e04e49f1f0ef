#pragma once

#include <cstddef>
#include <vector>

#include "cnls/spectral_field.hpp"

namespace cnls {

/// Coupling of the delta to a Fourier mode: delta has coefficients 1/(2pi).
inline constexpr double kKappa = 1.0 / kTwoPi;

struct VolterraConfig {
  double dt = 1e-3;
  double T = 0.5;
  int N = 64;
  double gamma = 0.0;
  /// +1 defocusing, -1 focusing, 0 switches the nonlinearity off.
  double lambda = 1.0;
  double p = 1.0;
  double x0 = 0.0;
  double picard_tol = 1e-12;
  int max_iters = 50;
  double blowup_threshold = 1e6;

  std::size_t steps() const;
  void validate() const;
};

/// q(t_j) = u(x0, t_j) on t_j = j dt, j = 0..T/dt.
struct ChargeTrajectory {
  VolterraConfig config;
  std::vector<double> times;
  std::vector<cplx> q;
  std::vector<int> picard_iters;
  /// int_0^T e^{-(gamma+i)k^2(T-t')} F(t') dt' for k = 0..N at the final time.
  std::vector<cplx> accumulators;

  /// Index j with t_j = t; throws SolverError(GridMismatch) otherwise.
  std::size_t index_of(double t) const;
};

/// q1(t) = sum_n c_n e^{-(gamma+i)n^2 t} e^{inx0}.
std::vector<cplx> free_trace(const SpectralField& u0, const std::vector<double>& times,
                             double gamma = 0.0, double x0 = 0.0);

/// Solves q(t) = q1(t) - (gamma+i) kappa int_0^t sum_{|k|<=N} e^{-(gamma+i)k^2(t-t')} F(t') dt'
/// with F = lambda |q|^{2p} q. Memory is carried by one accumulator per |k|,
/// decayed exactly each step and fed by a Filon panel that integrates the
/// linear interpolant of F exactly. The implicit endpoint is found by Picard
/// iteration. Throws SolverError(PicardDiverged | BlowUpDetected | NonFinite).
ChargeTrajectory solve_charge(const SpectralField& u0, const VolterraConfig& cfg);

/// Filon weights w0 = int_0^1 u e^{-zu} du, w1 = int_0^1 (1-u) e^{-zu} du.
struct FilonWeights {
  cplx w0;
  cplx w1;
};
FilonWeights filon_weights(cplx z);

/// Streams the per-mode Duhamel integrals of a charge trajectory forward in
/// time, reusing the solver's panels, for modes k = 0..N.
class ChargeReplay {
 public:
  ChargeReplay(const ChargeTrajectory& charge, int mode_cutoff);

  std::size_t step() const noexcept { return j_; }
  double time() const noexcept;
  /// Moves to the next grid time. Returns false at the end of the trajectory.
  bool advance();
  /// int_0^{t_j} e^{-(gamma+i)k^2(t_j-t')} F(t') dt'
  cplx accumulator(int k) const { return acc_[static_cast<std::size_t>(k < 0 ? -k : k)]; }
  /// Full field S_gamma(t_j) u0 - (gamma+i) kappa e^{-ikx0} acc_k on |k| <= N.
  SpectralField field(const SpectralField& u0) const;

 private:
  const ChargeTrajectory* charge_;
  int N_;
  std::size_t j_ = 0;
  std::vector<cplx> decay_;
  std::vector<cplx> w0_;
  std::vector<cplx> w1_;
  std::vector<cplx> acc_;
};

/// Throws SolverError(GridMismatch) if t is not a grid time.
SpectralField reconstruct_field(const SpectralField& u0, const ChargeTrajectory& charge, double t,
                                int mode_cutoff);

/// Fields at each of the requested grid steps (ascending), in one pass.
std::vector<SpectralField> reconstruct_series(const SpectralField& u0, const ChargeTrajectory& charge,
                                              const std::vector<std::size_t>& steps, int mode_cutoff);

/// Decomposition ||u(t)||^2 = I + II + III of the reconstructed field, with
/// I = ||u0||^2, II the cross term between the free and Duhamel parts and III
/// the squared Duhamel part. Exact conservation means II + III = 0.
struct MassIdentity {
  double term_I = 0.0;
  double term_II = 0.0;
  double term_III = 0.0;
  double residual = 0.0;     ///< |II + III|
  double mass_defect = 0.0;  ///< |mass(reconstruct(t)) - mass(u0)|
};

/// Requires a gamma = 0 trajectory.
MassIdentity mass_identity(const SpectralField& u0, const ChargeTrajectory& charge, double t);

inline double mass_identity_residual(const SpectralField& u0, const ChargeTrajectory& charge, double t) {
  return mass_identity(u0, charge, t).residual;
}

}  // namespace cnls
