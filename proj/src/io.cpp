#include "cnls/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace cnls::io {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json field_to_json(const SpectralField& field) {
  json coeffs = json::array();
  for (const auto& c : field.coeffs()) coeffs.push_back({c.real(), c.imag()});
  return {{"N", field.mode_cutoff()}, {"coeffs", std::move(coeffs)}};
}

SpectralField field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("coeffs")) {
    throw std::invalid_argument("field JSON needs keys \"N\" and \"coeffs\"");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "N" && key != "coeffs") throw std::invalid_argument("unknown field JSON key \"" + key + "\"");
  }
  if (!j["N"].is_number_integer()) throw std::invalid_argument("field \"N\" must be an integer");
  const int N = j["N"].get<int>();
  const auto& arr = j["coeffs"];
  if (!arr.is_array()) throw std::invalid_argument("field \"coeffs\" must be an array");
  std::vector<cplx> c;
  c.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw std::invalid_argument("each coefficient must be [re, im]");
    }
    c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return SpectralField(N, std::move(c));
}

SpectralField read_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open field file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("field file " + path.string() + " is not valid JSON: " + e.what());
  }
  return field_from_json(j);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("rename to " + path.string() + " failed: " + ec.message());
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,mass,energy_eps,abs_u0\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out += format_double(traj.times[i]) + ',' + format_double(traj.mass[i]) + ',' +
           format_double(traj.energy_eps[i]) + ',' + format_double(traj.abs_u0[i]) + '\n';
  }
  return out;
}

std::string charge_csv(const ChargeTrajectory& charge) {
  std::string out = "t,re_q,im_q,abs_q,picard_iters\n";
  for (std::size_t i = 0; i < charge.times.size(); ++i) {
    const cplx q = charge.q[i];
    out += format_double(charge.times[i]) + ',' + format_double(q.real()) + ',' + format_double(q.imag()) + ',' +
           format_double(std::abs(q)) + ',' + std::to_string(charge.picard_iters[i]) + '\n';
  }
  return out;
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("CSV row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += '\n';
  }
  return out;
}

json to_json(const SolverConfig& c) {
  return {{"N", c.N},           {"dt", c.dt},       {"T", c.T},
          {"epsilon", c.epsilon}, {"gamma", c.gamma}, {"lambda", c.lambda},
          {"p", c.p},           {"dealias", c.dealias}, {"x0", c.x0},
          {"snapshot_stride", c.snapshot_stride}, {"blowup_threshold", c.blowup_threshold}};
}

json to_json(const VolterraConfig& c) {
  return {{"N", c.N},         {"dt", c.dt},         {"T", c.T},
          {"gamma", c.gamma}, {"lambda", c.lambda}, {"p", c.p},
          {"x0", c.x0},       {"picard_tol", c.picard_tol}, {"max_iters", c.max_iters},
          {"blowup_threshold", c.blowup_threshold}};
}

json to_json(const TimeWindow& w) {
  return {{"half_width", w.half_width}, {"plateau", w.plateau}, {"sample_count", w.sample_count},
          {"padding", w.padding}};
}

json to_json(const SobolevTimeNorm& n) {
  return {{"exponent", n.exponent}, {"value", n.value},         {"eta_step", n.eta_step},
          {"eta_max", n.eta_max},   {"time_step", n.time_step}, {"samples", n.samples},
          {"half_width", n.half_width}, {"plateau", n.plateau}, {"padding", n.padding}};
}

json to_json(const ConvergenceReport& r) {
  return {{"parameter", r.parameter},
          {"metric", r.metric},
          {"ladder", r.ladder},
          {"errors", r.errors},
          {"reference_error", r.reference_error},
          {"monotone", r.monotone},
          {"richardson_rate", finite_or_null(r.richardson_rate)}};
}

json to_json(const DiagramReport& r) {
  return {{"eps_ladder", r.eps_ladder},
          {"gamma_ladder", r.gamma_ladder},
          {"path_a_order", r.path_a.order},
          {"path_b_order", r.path_b.order},
          {"path_a_extrapolated_error", r.path_a.finest_error},
          {"path_b_extrapolated_error", r.path_b.finest_error},
          {"path_a_rung_errors", r.path_a_rung_errors},
          {"path_b_rung_errors", r.path_b_rung_errors},
          {"discrepancy", r.discrepancy},
          {"finest_rung_gap", r.finest_rung_gap},
          {"path_a_to_reference", r.path_a_to_reference},
          {"path_b_to_reference", r.path_b_to_reference},
          {"commutes", r.commutes}};
}

json to_json(const ConservationReport& r) {
  return {{"samples", r.samples},
          {"max_mass_drift", r.max_mass_drift},
          {"max_energy_drift", r.max_energy_drift},
          {"mass_increases", r.mass_increases},
          {"energy_increases", r.energy_increases},
          {"slack", r.slack}};
}

json to_json(const ModeBoundReport& r) {
  return {{"n", r.n},
          {"gamma", r.gamma},
          {"s", r.s},
          {"low_norm", r.low_norm},
          {"low_bound", r.low_bound},
          {"low_ratio", r.low_ratio},
          {"high_norm_sq", finite_or_null(r.high_norm_sq)},
          {"high_bound", finite_or_null(r.high_bound)},
          {"high_ratio", finite_or_null(r.high_ratio)}};
}

json to_json(const BoundCheck& b) {
  return {{"quantity", b.quantity}, {"bound", b.bound}, {"ratio", b.ratio}, {"cap", b.cap}, {"pass", b.pass}};
}

json kernel_record(const KernelSpec& spec, const SobolevTimeNorm& norm) {
  return {{"gamma", spec.gamma}, {"N_k", spec.mode_cutoff}, {"s", norm.exponent}, {"norm", norm.value},
          {"metadata", to_json(norm)}};
}

}  // namespace cnls::io
