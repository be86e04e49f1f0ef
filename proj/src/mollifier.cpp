#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cnls/pde_solvers.hpp"

namespace cnls {

namespace {

double bump(double y) {
  const double d = 1.0 - y * y;
  return d > 0.0 ? std::exp(-1.0 / d) / kBumpMass : 0.0;
}

double periodic_distance(double x, double x0) {
  double d = std::fmod(std::abs(x - x0), kTwoPi);
  return d > kPi ? kTwoPi - d : d;
}

}  // namespace

Mollifier Mollifier::build(double epsilon, int mode_cutoff, double x0) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (epsilon > 1.0) throw std::invalid_argument("epsilon > 1 would wrap the bump around the torus");
  if (mode_cutoff < 8) throw std::invalid_argument("mollifier needs N >= 8");

  // c_n = (1/pi) int_0^1 V(y) cos(n eps y) dy by composite Gauss-Legendre.
  using rule = boost::math::quadrature::gauss<double, 30>;
  const auto& nodes = rule::abscissa();
  const auto& weights = rule::weights();
  const int panels = std::max(64, static_cast<int>(std::ceil(2.0 * mode_cutoff * epsilon)));
  const double h = 1.0 / panels;
  std::vector<double> ys;
  std::vector<double> ws;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * h;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (double sgn : {-1.0, 1.0}) {
        if (nodes[i] == 0.0 && sgn > 0.0) continue;
        const double y = mid + sgn * nodes[i] * h / 2.0;
        ys.push_back(y);
        ws.push_back(weights[i] * h / 2.0 * bump(y));
      }
    }
  }

  std::vector<double> raw(static_cast<std::size_t>(mode_cutoff) + 1);
  for (int n = 0; n <= mode_cutoff; ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < ys.size(); ++j) acc += ws[j] * std::cos(n * epsilon * ys[j]);
    raw[static_cast<std::size_t>(n)] = acc / kPi;
  }
  const double c0_target = 1.0 / kTwoPi;
  const double rescale = c0_target / raw[0];

  Mollifier m;
  m.epsilon_ = epsilon;
  m.x0_ = x0;
  m.scale_ = rescale;
  m.residual_ = std::abs(kTwoPi * raw[0] - 1.0);
  std::vector<cplx> c(static_cast<std::size_t>(2 * mode_cutoff + 1));
  for (int n = -mode_cutoff; n <= mode_cutoff; ++n) {
    const double v = n == 0 ? c0_target : raw[static_cast<std::size_t>(std::abs(n))] * rescale;
    c[static_cast<std::size_t>(n + mode_cutoff)] = x0 == 0.0 ? cplx(v, 0.0) : v * std::polar(1.0, -n * x0);
  }
  m.coeffs_ = SpectralField(mode_cutoff, std::move(c));
  return m;
}

Mollifier Mollifier::vanishing(int mode_cutoff, double x0) {
  Mollifier m;
  m.x0_ = x0;
  m.coeffs_ = SpectralField(mode_cutoff);
  return m;
}

double Mollifier::density(double x) const {
  if (scale_ == 0.0) return 0.0;
  return scale_ * bump(periodic_distance(x, x0_) / epsilon_) / epsilon_;
}

std::vector<double> Mollifier::grid_values(std::size_t M) const {
  std::vector<double> v(M);
  for (std::size_t j = 0; j < M; ++j) v[j] = density(kTwoPi * static_cast<double>(j) / static_cast<double>(M));
  return v;
}

}  // namespace cnls
