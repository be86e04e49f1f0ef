#pragma once

#include <cstddef>
#include <vector>

#include "cnls/spectral_field.hpp"

namespace cnls {

/// Truncation of S^delta_gamma(t) = sum_{|n|<=N_k} e^{-in^2 t - gamma n^2 |t|}.
struct KernelSpec {
  double gamma = 0.0;
  int mode_cutoff = 256;
};

/// Smooth even cut-off chi in time and the sampling grid used to measure
/// H^{-s}(R) norms of chi times a kernel.
///
/// chi = 1 on [-plateau, plateau], 0 outside (-L, L), and a C-infinity
/// smooth step built from exp(-1/x) in between. Samples are taken on a
/// uniform grid of sample_count points covering [-padding L, padding L].
struct TimeWindow {
  double half_width = 2.0 * kPi;
  double plateau = kPi;
  std::size_t sample_count = std::size_t{1} << 14;
  double padding = 2.0;

  double value(double t) const;
  double time_step() const;
  /// Largest |eta| represented by the grid.
  double nyquist() const;
  /// Throws std::invalid_argument for a malformed window.
  void validate() const;
  /// Throws std::invalid_argument unless the grid resolves frequency N_k^2.
  void require_resolves(int mode_cutoff) const;

  /// Default geometry with the smallest power-of-two sample count (at least
  /// 2^14) whose Nyquist frequency exceeds N_k^2 + 64.
  static TimeWindow resolving(int mode_cutoff);
};

/// Discrete H^{-s}(R) norm and the metadata needed to reproduce it.
struct SobolevTimeNorm {
  double exponent = 0.0;  ///< s, the norm is H^{-s}
  double value = 0.0;
  double eta_step = 0.0;
  double eta_max = 0.0;
  double time_step = 0.0;
  std::size_t samples = 0;
  double half_width = 0.0;
  double plateau = 0.0;
  double padding = 0.0;
};

cplx s_delta_partial(double t, int mode_cutoff);
cplx s_delta_gamma_partial(double t, const KernelSpec& spec);

/// n^2 gamma / ((xi + n^2)^2 + (gamma n^2)^2). Requires gamma > 0, n != 0.
double lorentzian(double xi, double gamma, int n);

/// Closed form pi / (2 gamma n^2) of the squared L^2 norm of the Lorentzian.
double lorentzian_l2_sq(double gamma, int n);

/// The same quantity by adaptive Gauss-Kronrod quadrature over |xi| <= cutoff.
double lorentzian_l2_sq_quadrature(double gamma, int n, double cutoff = 1e6);

/// H^{-s}(R) norm of chi(t) S^delta_gamma(t) (truncated) by the discrete rule:
/// sample on the window grid, Fhat(eta_k) = dt sum_j F(t_j) e^{-i t_j eta_k},
/// norm^2 = (1/2pi) sum_k d_eta (1 + eta_k^2)^{-s} |Fhat(eta_k)|^2.
/// Requires 0 < s <= 1 and a valid window that resolves N_k^2.
SobolevTimeNorm windowed_kernel_sobolev_norm(const KernelSpec& spec, double s,
                                             const TimeWindow& window);

/// H^{-s}(R) norm of chi (S^delta - S^delta_gamma), both truncated at N_k.
double kernel_difference_norm(double gamma, int mode_cutoff, double s, const TimeWindow& window);

/// Per-mode measurements behind the low- and high-frequency kernel bounds.
struct ModeBoundReport {
  int n = 0;
  double gamma = 0.0;
  double s = 0.0;
  /// ||chi e^{-in^2 t}(1 - e^{-gamma n^2|t|})||_{H^{-s}} against gamma^s.
  double low_norm = 0.0;
  double low_bound = 0.0;
  double low_ratio = 0.0;
  /// ||e^{-in^2 t - gamma n^2|t|}||^2_{H^{-s}(R)} against 1/(gamma n^{2+4s}).
  double high_norm_sq = 0.0;
  double high_bound = 0.0;
  double high_ratio = 0.0;
};

/// Requires gamma in [0, 1), n != 0. At gamma = 0 the low-frequency norm is
/// exactly zero and the high-frequency quantities are reported as infinite.
ModeBoundReport verify_mode_bounds(int n, double gamma, double s, const TimeWindow& window);

/// Discrete H^{-s}(R) norm of chi(t) G(t) where G(-t) = conj(G(t)) and
/// g_nonneg[k] = G(k dt) for k = 0..K, K dt <= half_width.
SobolevTimeNorm windowed_norm_from_samples(const std::vector<cplx>& g_nonneg, double s,
                                           const TimeWindow& window);

}  // namespace cnls
