#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cnls/analysis_validators.hpp"
#include "cnls/charge_solver.hpp"
#include "cnls/kernels.hpp"
#include "cnls/limits_harness.hpp"
#include "cnls/pde_solvers.hpp"
#include "cnls/spectral_field.hpp"

namespace cnls::io {

using json = nlohmann::json;

/// {"N": int, "coeffs": [[re, im], ...]} for n = -N..N. Doubles are written
/// in shortest round-trip form, so reading back is bit-exact.
json field_to_json(const SpectralField& field);
/// Throws std::invalid_argument on malformed input.
SpectralField field_from_json(const json& j);
SpectralField read_field(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over path, creating parent
/// directories. Readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::string trajectory_csv(const Trajectory& traj);
std::string charge_csv(const ChargeTrajectory& charge);

json to_json(const SolverConfig& cfg);
json to_json(const VolterraConfig& cfg);
json to_json(const TimeWindow& w);
json to_json(const SobolevTimeNorm& n);
json to_json(const ConvergenceReport& r);
json to_json(const DiagramReport& r);
json to_json(const ConservationReport& r);
json to_json(const ModeBoundReport& r);
json to_json(const BoundCheck& b);

/// Kernel analysis record {gamma, N_k, s, norm, metadata}.
json kernel_record(const KernelSpec& spec, const SobolevTimeNorm& norm);

/// CSV with a header row; every row must have header.size() cells.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace cnls::io
