// Recomputes the maxima behind include/cnls/calibration.hpp and writes the
// raw tables to <out>/calibration/. Usage: calibrate [out_dir]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "cnls/analysis_validators.hpp"
#include "cnls/io.hpp"
#include "cnls/kernels.hpp"

using namespace cnls;

int main(int argc, char** argv) {
  const std::filesystem::path dir = std::filesystem::path(argc > 1 ? argv[1] : "data") / "calibration";
  const double margin = 1.15;

  std::vector<std::vector<double>> mode_rows;
  double low = 0.0, high = 0.0;
  for (int n : {4, 8, 16, 32, 64}) {
    const TimeWindow w = TimeWindow::resolving(n);
    for (double g : {0.01, 0.025, 0.05, 0.1, 0.2, 0.5}) {
      const ModeBoundReport r = verify_mode_bounds(n, g, 0.49, w);
      low = std::max(low, r.low_ratio);
      high = std::max(high, r.high_ratio);
      mode_rows.push_back({double(n), g, r.low_norm, r.low_bound, r.low_ratio, r.high_norm_sq, r.high_bound, r.high_ratio});
    }
  }
  io::atomic_write(dir / "mode_bounds.csv",
                   io::csv_table({"n", "gamma", "low_norm", "low_bound", "low_ratio", "high_norm_sq", "high_bound",
                                  "high_ratio"},
                                 mode_rows));

  std::vector<double> t;
  for (int i = 0; i < 25; ++i) t.push_back(0.01 * std::pow(1000.0, i / 24.0));
  t.back() = 10.0;
  std::vector<std::vector<double>> heat_rows;
  double heat = 0.0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const BoundCheck b = heat_smoothing_ratio(0.1, 0.0, 1.0, t, {random_hs_field(1.0, 64, seed)}, INFINITY);
    heat = std::max(heat, b.ratio);
    heat_rows.push_back({double(seed), b.ratio});
  }
  io::atomic_write(dir / "heat_smoothing.csv", io::csv_table({"seed", "max_ratio"}, heat_rows));

  std::vector<double> m;
  for (int i = 1; i <= 200; ++i) m.push_back(i);
  const auto irr = irrational_samples(50);
  m.insert(m.end(), irr.begin(), irr.end());
  const long N = 200000;
  std::vector<std::vector<double>> comb_rows;
  double comb = 0.0;
  for (double mv : m) {
    const double v = combinatorial_partial_sum(mv, N) + combinatorial_tail(N);
    comb = std::max(comb, v);
    comb_rows.push_back({mv, v});
  }
  io::atomic_write(dir / "combinatorial.csv", io::csv_table({"m", "value"}, comb_rows));

  std::printf("mode low  max %.17g cap %.17g\n", low, low * margin);
  std::printf("mode high max %.17g cap %.17g\n", high, high * margin);
  std::printf("heat      max %.17g cap %.17g\n", heat, heat * margin);
  std::printf("comb      max %.17g (cap fixed at 6)\n", comb);
  return 0;
}
