#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace cnls {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Periodic complex field on the torus R/2piZ, stored as Fourier
/// coefficients c_n of e^{inx} for n = -N..N.
///
/// Normalization: f(x) = sum_n c_n e^{inx}, so ||f||_{L^2}^2 = 2pi sum |c_n|^2
/// and the Dirac delta at x0 has coefficients e^{-inx0}/(2pi). Every norm in
/// this library carries that 2pi factor.
class SpectralField {
 public:
  SpectralField() : SpectralField(0) {}
  explicit SpectralField(int mode_cutoff);
  /// Throws std::invalid_argument on size mismatch or non-finite entries.
  SpectralField(int mode_cutoff, std::vector<cplx> coeffs);

  static SpectralField plane_wave(int mode_cutoff, int k, cplx amplitude = 1.0);
  static SpectralField constant(int mode_cutoff, cplx value);

  int mode_cutoff() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of mode n; zero outside -N..N.
  cplx coeff(int n) const noexcept {
    return (n < -n_ || n > n_) ? cplx{} : coeffs_[static_cast<std::size_t>(n + n_)];
  }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Same function represented on modes -N'..N' (truncates or zero-pads).
  SpectralField with_cutoff(int mode_cutoff) const;
  /// f(x - shift), i.e. c_n -> c_n e^{-in shift}.
  SpectralField translated(double shift) const;

  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  int n_ = 0;
  std::vector<cplx> coeffs_;
};

struct Functionals {
  double mass = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double energy = 0.0;
};

cplx eval_at(const SpectralField& field, double x);

/// 2pi sum |c_n|^2
double mass(const SpectralField& field);

/// sqrt(2pi sum (1+n^2)^s |c_n|^2)
double hs_norm(const SpectralField& field, double s);

/// H^s norm of a - b; the fields may have different cutoffs.
double hs_distance(const SpectralField& a, const SpectralField& b, double s);

/// kinetic = 2pi sum n^2|c_n|^2, potential = |u(x0)|^{2p+2}/(p+1).
/// Throws std::invalid_argument if p < 1.
Functionals energy(const SpectralField& field, double p, double x0 = 0.0);

/// Schrodinger group: c_n -> e^{-in^2 t} c_n.
SpectralField free_evolve(const SpectralField& field, double t);

/// Ginzburg-Landau semigroup: c_n -> e^{-in^2 t - gamma n^2 |t|} c_n.
SpectralField cgl_evolve(const SpectralField& field, double t, double gamma);

/// c_n = (1+n^2)^{-(s+0.51)/2} g_n with g_n complex standard normal
/// (E|g|^2 = 1) drawn in order n = 0, 1, -1, 2, -2, ... from a 64-bit
/// Mersenne twister, so the field at cutoff N is the truncation of the field
/// at any larger cutoff with the same seed.
SpectralField random_hs_field(double s, int mode_cutoff, std::uint64_t seed);

/// sum |c_n|, the Wiener algebra norm.
double wiener_norm(const SpectralField& field);

}  // namespace cnls
