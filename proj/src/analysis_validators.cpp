#include "cnls/analysis_validators.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnls {

namespace {

void require_indicator_args(double a, double s) {
  if (!(a > 0.0)) throw std::invalid_argument("interval length must be > 0");
  if (!(s > 0.0 && s < 0.5)) throw std::invalid_argument("indicator norm needs s in (0, 1/2)");
}

}  // namespace

double indicator_hs_norm_closed(double a, double s) {
  require_indicator_args(a, s);
  return std::sqrt(a * a + 2.0 * std::pow(a, 1.0 - 2.0 * s) / (s * (1.0 - 2.0 * s)));
}

IndicatorNorm indicator_hs_norm(double a, double s) {
  require_indicator_args(a, s);
  boost::math::quadrature::tanh_sinh<double> outer;
  boost::math::quadrature::exp_sinh<double> inner;
  const double power = -1.0 - 2.0 * s;
  // Distance d from x to the complement side; integrate over v = |y - edge| in (0, inf).
  auto side = [&](double d) {
    return inner.integrate([&](double v) { return std::pow(d + v, power); }, 1e-12);
  };
  const double pairs = outer.integrate(
      [&](double x, double xc) {
        // xc = -x on the left half and a - x on the right half, exact near the ends.
        const double left = xc < 0.0 ? -xc : x;
        const double right = xc < 0.0 ? a - x : xc;
        return side(left) + side(right);
      },
      0.0, a, 1e-12);
  IndicatorNorm out;
  out.closed_form = indicator_hs_norm_closed(a, s);
  out.quadrature = std::sqrt(a * a + 2.0 * pairs);
  return out;
}

double heat_smoothing_single_mode(int n, double gamma, double t, double s, double s_prime) {
  const double n2 = static_cast<double>(n) * n;
  const double d = (s_prime - s) / 2.0;
  return std::pow(1.0 + n2, d) * std::exp(-gamma * n2 * t) * std::pow(gamma * t, d);
}

BoundCheck heat_smoothing_ratio(double gamma, double s, double s_prime, const std::vector<double>& t_grid,
                                const std::vector<SpectralField>& fields, double cap) {
  if (!(gamma > 0.0)) throw std::invalid_argument("heat smoothing needs gamma > 0");
  if (!(s <= s_prime)) throw std::invalid_argument("heat smoothing needs s <= s'");
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 1.0 / gamma)) throw std::invalid_argument("every t must lie in (0, 1/gamma]");
  }
  double worst = 0.0;
  for (const auto& f : fields) {
    const double base = hs_norm(f, s);
    if (base == 0.0) throw std::invalid_argument("heat smoothing fields must be nonzero");
    for (double t : t_grid) {
      const double r = hs_norm(cgl_evolve(f, t, gamma), s_prime) / (std::pow(gamma * t, (s - s_prime) / 2.0) * base);
      worst = std::max(worst, r);
    }
  }
  BoundCheck b;
  b.quantity = worst;
  b.bound = 1.0;
  b.ratio = worst;
  b.cap = cap;
  b.pass = b.ratio <= cap;
  return b;
}

double combinatorial_partial_sum(double m, long N) {
  if (N < 0) throw std::invalid_argument("truncation must be >= 0");
  const long double m2 = static_cast<long double>(m) * m;
  const long double tie = 1e-9L * std::max<long double>(1.0L, m2);
  long double acc = 0.0L;
  for (long n = N; n >= 0; --n) {
    const long double gap = std::abs(m2 - static_cast<long double>(n) * n);
    if (gap <= tie) continue;
    acc += (n == 0 ? 1.0L : 2.0L) / gap;
  }
  return static_cast<double>(acc);
}

double combinatorial_tail(long N) {
  if (N < 1) throw std::invalid_argument("tail needs N >= 1");
  // |n^2 - m^2| >= 3n^2/4 for |n| > N >= 2m, and sum_{n>N} 1/n^2 <= 1/N.
  return 8.0 / (3.0 * static_cast<double>(N));
}

double combinatorial_bound(const std::vector<double>& m_values, long N_trunc) {
  if (m_values.empty()) throw std::invalid_argument("no m values");
  double m_max = 0.0;
  for (double m : m_values) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("m values must be finite and >= 0");
    m_max = std::max(m_max, m);
  }
  if (static_cast<double>(N_trunc) < std::max(2.0, 4.0 * m_max * m_max)) {
    throw std::invalid_argument("truncation must be >= 4 max(m)^2");
  }
  const double tail = combinatorial_tail(N_trunc);
  double worst = 0.0;
  for (double m : m_values) worst = std::max(worst, combinatorial_partial_sum(m, N_trunc) + tail);
  return worst;
}

std::vector<double> irrational_samples(std::size_t count) {
  std::vector<double> out;
  for (long k = 2; out.size() < count; ++k) {
    const long r = std::lround(std::sqrt(static_cast<double>(k)));
    if (r * r == k) continue;
    out.push_back(std::sqrt(static_cast<double>(k)));
  }
  return out;
}

double inverse_gap_sum(long K) {
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  const double root = std::sqrt(static_cast<double>(K));
  const long X = std::max<long>(2000, 4 * static_cast<long>(std::ceil(root)) + 4);
  long double acc = 0.0L;
  for (long n = X; n >= 0; --n) {
    const long double gap = static_cast<long double>(K) - static_cast<long double>(n) * n;
    if (gap == 0.0L) continue;
    acc += (n == 0 ? 1.0L : 2.0L) / std::abs(gap);
  }
  // 2 sum_{n>X} 1/(n^2 - K) by the midpoint integral from X + 1/2.
  const double x = static_cast<double>(X) + 0.5;
  const double tail = K == 0 ? 2.0 / x : std::log((x + root) / (x - root)) / root;
  return static_cast<double>(acc) + tail;
}

double full_summability_check(const SequenceSpec& seq, int N_modes, int power) {
  if (power < 1 || power > 3) throw std::invalid_argument("power must be 1, 2 or 3");
  if (N_modes < 0) throw std::invalid_argument("mode count must be >= 0");
  const auto top = static_cast<std::size_t>(N_modes) * static_cast<std::size_t>(N_modes);

  // single[S] = sum over |k| <= N with k^2 = S of |a_k|.
  std::vector<double> single(top + 1, 0.0);
  for (int k = -N_modes; k <= N_modes; ++k) {
    const double a = std::abs(seq(k));
    if (!std::isfinite(a)) throw std::invalid_argument("sequence values must be finite");
    single[static_cast<std::size_t>(k) * static_cast<std::size_t>(k)] += a;
  }
  std::vector<double> weight = single;
  for (int r = 1; r < power; ++r) {
    std::vector<double> next(weight.size() + top, 0.0);
    for (std::size_t i = 0; i < weight.size(); ++i) {
      if (weight[i] == 0.0) continue;
      for (std::size_t j = 0; j <= top; ++j) {
        if (single[j] != 0.0) next[i + j] += weight[i] * single[j];
      }
    }
    weight = std::move(next);
  }
  long double total = 0.0L;
  for (std::size_t S = 0; S < weight.size(); ++S) {
    if (weight[S] == 0.0) continue;
    total += static_cast<long double>(weight[S]) * inverse_gap_sum(static_cast<long>(S));
  }
  return static_cast<double>(total);
}

}  // namespace cnls
