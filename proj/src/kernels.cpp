#include "cnls/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cnls/fft.hpp"

namespace cnls {

namespace {

constexpr std::size_t kReseedStride = 1024;
constexpr double kFlush = 1e-200;
constexpr double kNyquistMargin = 64.0;

double smooth_step_psi(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

void require_lorentzian_args(double gamma, int n) {
  if (!(gamma > 0.0)) throw std::invalid_argument("Lorentzian needs gamma > 0");
  if (n == 0) throw std::invalid_argument("Lorentzian is undefined for mode n = 0");
}

void require_exponent(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("Sobolev exponent must lie in (0, 1]");
}

std::size_t support_samples(const TimeWindow& w) {
  return static_cast<std::size_t>(std::floor(w.half_width / w.time_step())) + 1;
}

// G(k dt) for k = 0..K of sum_{|n|<=N} e^{-(i+gamma) n^2 t}, or, when
// difference is set, of sum_{|n|<=N} e^{-in^2 t}(1 - e^{-gamma n^2 t}).
std::vector<cplx> kernel_samples(double gamma, int N, const TimeWindow& w, bool difference) {
  const std::size_t K = support_samples(w);
  const double dt = w.time_step();
  std::vector<cplx> g(K, difference ? cplx{} : cplx{1.0, 0.0});
  for (int n = 1; n <= N; ++n) {
    const double n2 = static_cast<double>(n) * n;
    if (difference) {
      const cplx z = std::polar(1.0, -n2 * dt);
      cplx w_phase{1.0, 0.0};
      for (std::size_t k = 0; k < K; ++k) {
        if (k % kReseedStride == 0) w_phase = std::polar(1.0, -n2 * dt * static_cast<double>(k));
        const double damp = -std::expm1(-gamma * n2 * dt * static_cast<double>(k));
        g[k] += 2.0 * damp * w_phase;
        w_phase *= z;
      }
    } else {
      const cplx z = std::polar(std::exp(-gamma * n2 * dt), -n2 * dt);
      cplx w_val{1.0, 0.0};
      for (std::size_t k = 0; k < K; ++k) {
        if (k % kReseedStride == 0) {
          const double t = dt * static_cast<double>(k);
          const double damp = std::exp(-gamma * n2 * t);
          if (damp < kFlush) break;
          w_val = std::polar(damp, -n2 * t);
        }
        g[k] += 2.0 * w_val;
        w_val *= z;
      }
    }
  }
  return g;
}

}  // namespace

double TimeWindow::value(double t) const {
  const double a = std::abs(t);
  if (a <= plateau) return 1.0;
  if (a >= half_width) return 0.0;
  const double tau = (a - plateau) / (half_width - plateau);
  const double up = smooth_step_psi(1.0 - tau);
  const double down = smooth_step_psi(tau);
  return up / (up + down);
}

double TimeWindow::time_step() const {
  return 2.0 * padding * half_width / static_cast<double>(sample_count);
}

double TimeWindow::nyquist() const { return kPi / time_step(); }

void TimeWindow::validate() const {
  if (!(half_width > kPi)) throw std::invalid_argument("window half-width must exceed pi");
  if (!(plateau >= kPi)) throw std::invalid_argument("window plateau must cover [-pi, pi]");
  if (!(plateau < half_width)) throw std::invalid_argument("window plateau must be inside the support");
  if (!(padding >= 1.0)) throw std::invalid_argument("window padding must be >= 1");
  if (sample_count < 16 || !std::has_single_bit(sample_count)) {
    throw std::invalid_argument("window sample count must be a power of two >= 16");
  }
}

void TimeWindow::require_resolves(int mode_cutoff) const {
  validate();
  const double top = static_cast<double>(mode_cutoff) * mode_cutoff;
  if (nyquist() < top + kNyquistMargin) {
    throw std::invalid_argument("window grid Nyquist frequency " + std::to_string(nyquist()) +
                                " does not resolve kernel frequency " + std::to_string(top));
  }
}

TimeWindow TimeWindow::resolving(int mode_cutoff) {
  TimeWindow w;
  const double top = static_cast<double>(mode_cutoff) * mode_cutoff + kNyquistMargin;
  while (w.nyquist() < top) w.sample_count *= 2;
  return w;
}

cplx s_delta_partial(double t, int mode_cutoff) {
  if (mode_cutoff < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  cplx sum{1.0, 0.0};
  for (int n = 1; n <= mode_cutoff; ++n) {
    sum += 2.0 * std::polar(1.0, -static_cast<double>(n) * n * t);
  }
  return sum;
}

cplx s_delta_gamma_partial(double t, const KernelSpec& spec) {
  if (spec.mode_cutoff < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  if (spec.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (spec.gamma == 0.0) return s_delta_partial(t, spec.mode_cutoff);
  cplx sum{1.0, 0.0};
  for (int n = 1; n <= spec.mode_cutoff; ++n) {
    const double n2 = static_cast<double>(n) * n;
    sum += 2.0 * std::polar(std::exp(-spec.gamma * n2 * std::abs(t)), -n2 * t);
  }
  return sum;
}

double lorentzian(double xi, double gamma, int n) {
  require_lorentzian_args(gamma, n);
  const double n2 = static_cast<double>(n) * n;
  const double shift = xi + n2;
  const double width = gamma * n2;
  return width / (shift * shift + width * width);
}

double lorentzian_l2_sq(double gamma, int n) {
  require_lorentzian_args(gamma, n);
  return kPi / (2.0 * gamma * static_cast<double>(n) * n);
}

double lorentzian_l2_sq_quadrature(double gamma, int n, double cutoff) {
  require_lorentzian_args(gamma, n);
  using boost::math::quadrature::gauss_kronrod;
  const double centre = -static_cast<double>(n) * n;
  const double width = gamma * static_cast<double>(n) * n;
  std::vector<double> cuts{-cutoff, cutoff};
  for (double m : {0.0, 1.0, 30.0, 1000.0}) {
    for (double sgn : {-1.0, 1.0}) {
      const double x = centre + sgn * m * width;
      if (x > -cutoff && x < cutoff) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto f = [&](double xi) {
    const double v = lorentzian(xi, gamma, n);
    return v * v;
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 20, 1e-14);
  }
  return total;
}

SobolevTimeNorm windowed_norm_from_samples(const std::vector<cplx>& g_nonneg, double s,
                                           const TimeWindow& window) {
  require_exponent(s);
  window.validate();
  const std::size_t M = window.sample_count;
  const std::size_t j0 = M / 2;
  const double dt = window.time_step();
  if (g_nonneg.size() > j0) throw std::invalid_argument("too many kernel samples for window grid");

  std::vector<cplx> F(M, cplx{});
  for (std::size_t k = 0; k < g_nonneg.size(); ++k) {
    const double chi = window.value(dt * static_cast<double>(k));
    if (chi == 0.0) continue;
    F[j0 + k] = chi * g_nonneg[k];
    if (k > 0) F[j0 - k] = chi * std::conj(g_nonneg[k]);
  }
  Fft fft(M);
  fft.forward(F);

  const double d_eta = kTwoPi / (static_cast<double>(M) * dt);
  double acc = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    const double idx = k < j0 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(M);
    const double eta = idx * d_eta;
    acc += std::pow(1.0 + eta * eta, -s) * std::norm(F[k]);
  }
  acc *= dt * dt * d_eta / kTwoPi;

  SobolevTimeNorm out;
  out.exponent = s;
  out.value = std::sqrt(acc);
  out.eta_step = d_eta;
  out.eta_max = window.nyquist();
  out.time_step = dt;
  out.samples = M;
  out.half_width = window.half_width;
  out.plateau = window.plateau;
  out.padding = window.padding;
  return out;
}

SobolevTimeNorm windowed_kernel_sobolev_norm(const KernelSpec& spec, double s,
                                             const TimeWindow& window) {
  require_exponent(s);
  if (spec.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (spec.mode_cutoff < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  window.require_resolves(spec.mode_cutoff);
  return windowed_norm_from_samples(kernel_samples(spec.gamma, spec.mode_cutoff, window, false), s,
                                    window);
}

double kernel_difference_norm(double gamma, int mode_cutoff, double s, const TimeWindow& window) {
  require_exponent(s);
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (mode_cutoff < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  window.require_resolves(mode_cutoff);
  if (gamma == 0.0 || mode_cutoff == 0) return 0.0;
  return windowed_norm_from_samples(kernel_samples(gamma, mode_cutoff, window, true), s, window).value;
}

ModeBoundReport verify_mode_bounds(int n, double gamma, double s, const TimeWindow& window) {
  if (n == 0) throw std::invalid_argument("mode bounds need n != 0");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("mode bounds need gamma in [0, 1)");
  require_exponent(s);
  window.require_resolves(std::abs(n));

  ModeBoundReport r;
  r.n = n;
  r.gamma = gamma;
  r.s = s;
  r.low_bound = std::pow(gamma, s);
  if (gamma == 0.0) {
    r.low_norm = 0.0;
    r.low_ratio = 0.0;
    r.high_norm_sq = std::numeric_limits<double>::infinity();
    r.high_bound = std::numeric_limits<double>::infinity();
    r.high_ratio = std::numeric_limits<double>::infinity();
    return r;
  }

  const double n2 = static_cast<double>(n) * n;
  const std::size_t K = support_samples(window);
  const double dt = window.time_step();
  std::vector<cplx> g(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double t = dt * static_cast<double>(k);
    g[k] = std::polar(1.0, -n2 * t) * -std::expm1(-gamma * n2 * t);
  }
  r.low_norm = windowed_norm_from_samples(g, s, window).value;
  r.low_ratio = r.low_norm / r.low_bound;

  // Time transform of e^{-in^2 t - gamma n^2|t|} is 2 L(eta), so the squared
  // H^{-s}(R) norm is (2/pi) int (1+eta^2)^{-s} L(eta)^2 d eta.
  using boost::math::quadrature::gauss_kronrod;
  const double width = gamma * n2;
  auto f = [&](double eta) {
    const double v = lorentzian(eta, gamma, n);
    return std::pow(1.0 + eta * eta, -s) * v * v;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cuts{-inf};
  for (double m : {-1000.0, -30.0, -1.0, 0.0, 1.0, 30.0, 1000.0}) cuts.push_back(-n2 + m * width);
  cuts.push_back(inf);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    integral += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 20, 1e-13);
  }
  r.high_norm_sq = 2.0 / kPi * integral;
  r.high_bound = 1.0 / (gamma * std::pow(std::abs(static_cast<double>(n)), 2.0 + 4.0 * s));
  r.high_ratio = r.high_norm_sq / r.high_bound;
  return r;
}

}  // namespace cnls
