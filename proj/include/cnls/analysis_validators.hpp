#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cnls/spectral_field.hpp"

namespace cnls {

struct BoundCheck {
  double quantity = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double cap = 0.0;
  bool pass = false;
};

struct IndicatorNorm {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// H^s(R) norm of the indicator of [0, a] in the Gagliardo form
/// ||f||^2 = ||f||_{L^2}^2 + int int |f(x)-f(y)|^2 / |x-y|^{1+2s} dx dy.
/// closed_form uses a^2 + 2a^{1-2s}/(s(1-2s)); quadrature integrates the
/// double integral numerically. Requires a > 0 and s in (0, 1/2).
IndicatorNorm indicator_hs_norm(double a, double s);

/// Closed form only (cheap).
double indicator_hs_norm_closed(double a, double s);

/// max over fields and t of ||S_gamma(t) f||_{H^{s'}} / ((gamma t)^{(s-s')/2} ||f||_{H^s}).
/// Requires s <= s_prime, gamma > 0, every t in (0, 1/gamma] and nonzero fields.
BoundCheck heat_smoothing_ratio(double gamma, double s, double s_prime, const std::vector<double>& t_grid,
                                const std::vector<SpectralField>& fields, double cap);

/// (1+n^2)^{(s'-s)/2} e^{-gamma n^2 t} (gamma t)^{(s'-s)/2}, the ratio for a single mode.
double heat_smoothing_single_mode(int n, double gamma, double t, double s, double s_prime);

/// sum_{|n|<=N, n^2 != m^2} 1/|m^2 - n^2| without any tail.
double combinatorial_partial_sum(double m, long N);

/// Certified tail 8/(3N) >= sum_{|n|>N} 1/|m^2-n^2|, valid when N >= 2m.
double combinatorial_tail(long N);

/// max over m of partial sum plus certified tail. Requires N >= max(2, 4 max(m)^2).
double combinatorial_bound(const std::vector<double>& m_values, long N_trunc);

/// Irrational sample points m = sqrt(k) for the first `count` non-square k >= 2.
std::vector<double> irrational_samples(std::size_t count);

/// |a_k| for the summability check.
using SequenceSpec = std::function<double(int)>;

/// sum_{n in Z} sum_{|n_i| <= N_modes, sum n_i^2 != n^2} prod |a_{n_i}| / |sum n_i^2 - n^2|
/// for power in {1, 2, 3}. The n sum is exact up to a midpoint-integral tail.
double full_summability_check(const SequenceSpec& seq, int N_modes, int power);

/// sum_{n in Z, n^2 != K} 1/|K - n^2| (partial sum plus integral tail).
double inverse_gap_sum(long K);

}  // namespace cnls
