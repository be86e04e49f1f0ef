#pragma once

// Caps frozen from tools/calibrate; the raw tables are in data/calibration/.
// Each cap is the calibrated maximum times a 15% margin.

namespace cnls::calibration {

/// verify_mode_bounds high-frequency ratio, s = 0.49,
/// n in {4, 8, 16, 32, 64}, gamma in {0.01, 0.025, 0.05, 0.1, 0.2, 0.5}.
inline constexpr double kModeHighRatioMax = 1.7914036208601118;
inline constexpr double kModeHighRatioCap = 2.0601141639891285;

/// verify_mode_bounds low-frequency ratio on the same grid.
inline constexpr double kModeLowRatioMax = 2.7076472542122718;
inline constexpr double kModeLowRatioCap = 3.1137943423441126;

/// heat_smoothing_ratio at gamma = 0.1, s = 0, s' = 1, random_hs_field(1, 64, seed)
/// for seeds 1..8, t on 25 log-spaced points in [0.01, 10].
inline constexpr double kHeatSmoothingMax = 0.83857359179558666;
inline constexpr double kHeatSmoothingCap = 0.96435963056492457;

/// combinatorial_bound over m in {1..200} and 50 irrational samples, N = 200000.
inline constexpr double kCombinatorialMax = 4.3863825179570926;
inline constexpr double kCombinatorialCap = 6.0;

}  // namespace cnls::calibration
