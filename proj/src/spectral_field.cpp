#include "cnls/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cnls {

SpectralField::SpectralField(int mode_cutoff) : n_(mode_cutoff) {
  if (mode_cutoff < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  coeffs_.assign(static_cast<std::size_t>(2 * mode_cutoff + 1), cplx{});
}

SpectralField::SpectralField(int mode_cutoff, std::vector<cplx> coeffs)
    : n_(mode_cutoff), coeffs_(std::move(coeffs)) {
  if (mode_cutoff < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  if (coeffs_.size() != static_cast<std::size_t>(2 * mode_cutoff + 1)) {
    throw std::invalid_argument("expected " + std::to_string(2 * mode_cutoff + 1) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("field coefficients must be finite");
    }
  }
}

SpectralField SpectralField::plane_wave(int mode_cutoff, int k, cplx amplitude) {
  if (k < -mode_cutoff || k > mode_cutoff) {
    throw std::invalid_argument("plane wave mode outside cutoff");
  }
  std::vector<cplx> c(static_cast<std::size_t>(2 * mode_cutoff + 1));
  c[static_cast<std::size_t>(k + mode_cutoff)] = amplitude;
  return SpectralField(mode_cutoff, std::move(c));
}

SpectralField SpectralField::constant(int mode_cutoff, cplx value) {
  return plane_wave(mode_cutoff, 0, value);
}

SpectralField SpectralField::with_cutoff(int mode_cutoff) const {
  std::vector<cplx> c(static_cast<std::size_t>(2 * mode_cutoff + 1));
  for (int n = -mode_cutoff; n <= mode_cutoff; ++n) {
    c[static_cast<std::size_t>(n + mode_cutoff)] = coeff(n);
  }
  return SpectralField(mode_cutoff, std::move(c));
}

SpectralField SpectralField::translated(double shift) const {
  if (shift == 0.0) return *this;
  std::vector<cplx> c(coeffs_);
  for (int n = -n_; n <= n_; ++n) {
    c[static_cast<std::size_t>(n + n_)] *= std::polar(1.0, -n * shift);
  }
  return SpectralField(n_, std::move(c));
}

cplx eval_at(const SpectralField& field, double x) {
  const int N = field.mode_cutoff();
  cplx sum = field.coeff(0);
  if (x == 0.0) {
    for (int n = 1; n <= N; ++n) sum += field.coeff(n) + field.coeff(-n);
    return sum;
  }
  for (int n = 1; n <= N; ++n) {
    const cplx phase = std::polar(1.0, n * x);
    sum += field.coeff(n) * phase + field.coeff(-n) * std::conj(phase);
  }
  return sum;
}

double mass(const SpectralField& field) {
  double acc = 0.0;
  for (const auto& c : field.coeffs()) acc += std::norm(c);
  return kTwoPi * acc;
}

double hs_norm(const SpectralField& field, double s) {
  const int N = field.mode_cutoff();
  double acc = 0.0;
  for (int n = -N; n <= N; ++n) {
    acc += std::pow(1.0 + static_cast<double>(n) * n, s) * std::norm(field.coeff(n));
  }
  return std::sqrt(kTwoPi * acc);
}

double hs_distance(const SpectralField& a, const SpectralField& b, double s) {
  const int N = std::max(a.mode_cutoff(), b.mode_cutoff());
  double acc = 0.0;
  for (int n = -N; n <= N; ++n) {
    acc += std::pow(1.0 + static_cast<double>(n) * n, s) * std::norm(a.coeff(n) - b.coeff(n));
  }
  return std::sqrt(kTwoPi * acc);
}

Functionals energy(const SpectralField& field, double p, double x0) {
  if (!(p >= 1.0)) throw std::invalid_argument("nonlinearity power p must be >= 1");
  Functionals f;
  const int N = field.mode_cutoff();
  double kin = 0.0;
  for (int n = -N; n <= N; ++n) kin += static_cast<double>(n) * n * std::norm(field.coeff(n));
  f.mass = mass(field);
  f.kinetic = kTwoPi * kin;
  f.potential = std::pow(std::abs(eval_at(field, x0)), 2.0 * p + 2.0) / (p + 1.0);
  f.energy = f.kinetic + f.potential;
  return f;
}

SpectralField free_evolve(const SpectralField& field, double t) {
  if (t == 0.0) return field;
  const int N = field.mode_cutoff();
  std::vector<cplx> c(field.coeffs().begin(), field.coeffs().end());
  for (int n = -N; n <= N; ++n) {
    const double w = static_cast<double>(n) * n;
    c[static_cast<std::size_t>(n + N)] *= std::polar(1.0, -w * t);
  }
  return SpectralField(N, std::move(c));
}

SpectralField cgl_evolve(const SpectralField& field, double t, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (gamma == 0.0) return free_evolve(field, t);
  const int N = field.mode_cutoff();
  std::vector<cplx> c(field.coeffs().begin(), field.coeffs().end());
  for (int n = -N; n <= N; ++n) {
    const double w = static_cast<double>(n) * n;
    c[static_cast<std::size_t>(n + N)] *= std::polar(std::exp(-gamma * w * std::abs(t)), -w * t);
  }
  return SpectralField(N, std::move(c));
}

SpectralField random_hs_field(double s, int mode_cutoff, std::uint64_t seed) {
  if (mode_cutoff < 1) throw std::invalid_argument("random field needs N >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<cplx> c(static_cast<std::size_t>(2 * mode_cutoff + 1));
  auto draw = [&](int n) {
    const double re = normal(rng);
    const double im = normal(rng);
    const double decay = std::pow(1.0 + static_cast<double>(n) * n, -(s + 0.51) / 2.0);
    c[static_cast<std::size_t>(n + mode_cutoff)] = decay * cplx(re, im);
  };
  draw(0);
  for (int n = 1; n <= mode_cutoff; ++n) {
    draw(n);
    draw(-n);
  }
  return SpectralField(mode_cutoff, std::move(c));
}

double wiener_norm(const SpectralField& field) {
  double acc = 0.0;
  for (const auto& c : field.coeffs()) acc += std::abs(c);
  return acc;
}

}  // namespace cnls
