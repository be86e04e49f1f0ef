#include "cnls/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "cnls/analysis_validators.hpp"
#include "cnls/calibration.hpp"
#include "cnls/charge_solver.hpp"
#include "cnls/error.hpp"
#include "cnls/io.hpp"
#include "cnls/kernels.hpp"
#include "cnls/limits_harness.hpp"
#include "cnls/pde_solvers.hpp"

namespace cnls::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

struct RunConfig {
  std::string subcommand;
  std::string u0 = "preset:plane_wave";
  std::string out = ".";
  std::string config_path;
  std::uint64_t seed = 0;
  int N = 64;
  double dt = 1e-3;
  double T = 0.5;
  double eps = 0.1;
  double gamma = 0.05;
  double lambda = 1.0;
  double p = 1.0;
  double x0 = 0.0;
  bool dealias = false;
  int stride = 10;
  std::vector<double> ladder;
  std::vector<double> eps_ladder{0.4, 0.2, 0.1, 0.05};
  std::vector<double> gamma_ladder{0.2, 0.1, 0.05, 0.025};
  std::vector<double> gammas{0.2, 0.1, 0.05, 0.025, 0.0125};
  double s = 0.75;
  int Nk = 256;
  std::string suite = "all";
  bool check = false;
};

// Options of one subcommand that may also come from a --config file.
struct Registry {
  struct Entry {
    CLI::Option* option;
    std::function<void(const json&)> apply;
  };
  std::map<std::string, Entry> entries;
  std::vector<std::string> order;
  std::map<std::string, std::function<json()>> echo;
};

template <class T>
void bind_option(CLI::App* app, Registry& reg, const std::string& key, T& field, const std::string& help) {
  std::string flag = "--" + key;
  for (auto& ch : flag) {
    if (ch == '_') ch = '-';
  }
  CLI::Option* opt = nullptr;
  if constexpr (std::is_same_v<T, bool>) {
    opt = app->add_flag(flag, field, help);
  } else {
    opt = app->add_option(flag, field, help)->capture_default_str();
    if constexpr (std::is_same_v<T, std::vector<double>>) opt->delimiter(',');
  }
  reg.entries[key] = {opt, [&field, key](const json& j) {
                        try {
                          field = j.get<T>();
                        } catch (const json::exception&) {
                          throw std::invalid_argument("config key \"" + key + "\" has the wrong type");
                        }
                      }};
  reg.order.push_back(key);
  reg.echo[key] = [&field] { return json(field); };
}

void apply_config_file(const std::string& path, Registry& reg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto it = reg.entries.find(key);
    if (it == reg.entries.end()) throw std::invalid_argument("unknown config key \"" + key + "\"");
    if (it->second.option->count() > 0) continue;  // command line wins
    it->second.apply(value);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from \"" + s + "\"");
  }
}

SpectralField make_u0(const RunConfig& rc) {
  const std::string& spec = rc.u0;
  if (spec.rfind("file:", 0) == 0) return io::read_field(spec.substr(5)).with_cutoff(rc.N);
  if (spec.rfind("preset:", 0) != 0) throw std::invalid_argument("u0 must start with preset: or file:");
  const auto parts = split(spec.substr(7), ':');
  if (parts.empty()) throw std::invalid_argument("missing u0 preset name");
  const std::string& name = parts[0];
  auto arg = [&](std::size_t i, double fallback) {
    return parts.size() > i ? parse_number(parts[i], "u0 preset argument") : fallback;
  };
  if (name == "plane_wave") {
    if (parts.size() > 3) throw std::invalid_argument("plane_wave takes at most k and amplitude");
    const double k = arg(1, 1.0);
    if (k != std::round(k)) throw std::invalid_argument("plane_wave mode must be an integer");
    return SpectralField::plane_wave(rc.N, static_cast<int>(k), arg(2, 1.0));
  }
  if (name == "constant") {
    if (parts.size() > 2) throw std::invalid_argument("constant takes at most one value");
    return SpectralField::constant(rc.N, arg(1, 1.0));
  }
  if (name == "random_hs") {
    if (parts.size() > 3) throw std::invalid_argument("random_hs takes at most s and seed");
    const double seed = arg(2, static_cast<double>(rc.seed));
    if (seed < 0 || seed != std::round(seed)) throw std::invalid_argument("random_hs seed must be a non-negative integer");
    return random_hs_field(arg(1, 1.0), rc.N, static_cast<std::uint64_t>(seed));
  }
  throw std::invalid_argument("unknown u0 preset \"" + name + "\"");
}

SolverConfig solver_config(const RunConfig& rc, bool cgl) {
  SolverConfig c;
  c.N = rc.N;
  c.dt = rc.dt;
  c.T = rc.T;
  c.epsilon = rc.eps;
  c.gamma = cgl ? rc.gamma : 0.0;
  c.lambda = rc.lambda;
  c.p = rc.p;
  c.dealias = rc.dealias;
  c.x0 = rc.x0;
  c.snapshot_stride = rc.stride;
  return c;
}

VolterraConfig volterra_config(const RunConfig& rc, double gamma) {
  VolterraConfig c;
  c.N = rc.N;
  c.dt = rc.dt;
  c.T = rc.T;
  c.gamma = gamma;
  c.lambda = rc.lambda;
  c.p = rc.p;
  c.x0 = rc.x0;
  return c;
}

class Output {
 public:
  explicit Output(const RunConfig& rc) : dir_(rc.out), prefix_(rc.subcommand) {}
  void write(const std::string& suffix, const std::string& content) const {
    io::atomic_write(dir_ / (prefix_ + "_" + suffix), content);
  }
  void write_json(const std::string& suffix, const json& j) const { write(suffix, j.dump(2) + "\n"); }
  // Wall-clock times vary between runs, so they stay out of the CSV/JSON outputs.
  void write_timings(const std::vector<double>& ladder, const std::vector<double>& seconds) const {
    std::string text;
    for (std::size_t i = 0; i < seconds.size(); ++i) {
      const std::string label = i < ladder.size() ? io::format_double(ladder[i]) : "reference";
      text += "rung " + std::to_string(i) + " value " + label + " seconds " + io::format_double(seconds[i]) + "\n";
      std::cerr << "[cnls] rung " << i << " " << seconds[i] << " s\n";
    }
    write("timing.log", text);
  }

 private:
  fs::path dir_;
  std::string prefix_;
};

void log_timing(const std::string& what, double seconds) {
  std::cerr << "[cnls] " << what << " " << seconds << " s\n";
}

int finish(bool ok, bool check) { return (check && !ok) ? kExitCheckFailed : kExitOk; }

int cmd_trajectory(const RunConfig& rc, bool cgl) {
  const auto u0 = make_u0(rc);
  const SolverConfig cfg = solver_config(rc, cgl);
  const Trajectory tr = cgl ? scgl_solve(u0, cfg) : snls_solve(u0, cfg);
  const ConservationReport rep = conservation_report(tr);
  Output out(rc);
  out.write("trajectory.csv", io::trajectory_csv(tr));
  out.write_json("final.json", io::field_to_json(tr.final_field()));
  const bool ok = cgl ? (rep.mass_increases == 0 && rep.energy_increases == 0) : rep.max_mass_drift <= 1e-10;
  json report = io::to_json(rep);
  report["pass"] = ok;
  out.write_json("report.json", report);
  return finish(ok, rc.check);
}

int cmd_charge(const RunConfig& rc) {
  const auto u0 = make_u0(rc);
  const VolterraConfig cfg = volterra_config(rc, rc.gamma);
  const ChargeTrajectory ch = solve_charge(u0, cfg);
  Output out(rc);
  out.write("charge.csv", io::charge_csv(ch));
  out.write_json("final.json", io::field_to_json(reconstruct_field(u0, ch, ch.times.back(), cfg.N)));
  const ConservationReport cons = conservation_report(ch, u0);
  json report = {{"conservation", io::to_json(cons)}};
  bool ok = true;
  if (cfg.gamma == 0.0) {
    const MassIdentity mi = mass_identity(u0, ch, ch.times.back());
    report["mass_identity"] = {{"I", mi.term_I},
                               {"II", mi.term_II},
                               {"III", mi.term_III},
                               {"residual", mi.residual},
                               {"mass_defect", mi.mass_defect}};
    // Relative to I = ||u0||^2 so the check does not depend on the amplitude.
    ok = mi.residual <= 1e-6 * std::max(1.0, mi.term_I) && cons.max_energy_drift <= 1e-4;
  } else {
    ok = cons.mass_increases == 0;
  }
  report["pass"] = ok;
  out.write_json("report.json", report);
  return finish(ok, rc.check);
}

int cmd_sweep_eps(const RunConfig& rc) {
  const auto u0 = make_u0(rc);
  const std::vector<double> ladder = rc.ladder.empty() ? rc.eps_ladder : rc.ladder;
  const ConvergenceReport rep = concentration_sweep(u0, ladder, solver_config(rc, false), rc.s);
  Output out(rc);
  out.write_timings(rep.ladder, rep.runtime_seconds);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.errors.size(); ++i) rows.push_back({ladder[i], ladder[i + 1], rep.errors[i]});
  out.write("errors.csv", io::csv_table({"eps", "eps_next", "error"}, rows));
  json j = io::to_json(rep);
  j.erase("runtime_seconds");
  const bool ok = rep.monotone && (rep.errors.empty() || rep.reference_error < rep.errors.front());
  j["pass"] = ok;
  out.write_json("report.json", j);
  return finish(ok, rc.check);
}

int cmd_sweep_gamma(const RunConfig& rc) {
  const auto u0 = make_u0(rc);
  const std::vector<double> ladder = rc.ladder.empty() ? rc.gamma_ladder : rc.ladder;
  const ConvergenceReport rep = inviscid_sweep(u0, ladder, volterra_config(rc, 0.0));
  Output out(rc);
  out.write_timings(rep.ladder, rep.runtime_seconds);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.errors.size(); ++i) rows.push_back({ladder[i], rep.errors[i]});
  out.write("errors.csv", io::csv_table({"gamma", "error"}, rows));
  json j = io::to_json(rep);
  j.erase("runtime_seconds");
  j["pass"] = rep.monotone;
  out.write_json("report.json", j);
  return finish(rep.monotone, rc.check);
}

int cmd_diagram(const RunConfig& rc) {
  const auto u0 = make_u0(rc);
  const DiagramReport rep = commuting_diagram(u0, rc.eps_ladder, rc.gamma_ladder, solver_config(rc, false));
  Output out(rc);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < rep.times.size(); ++j) {
    const cplx a = rep.path_a.limit[j];
    const cplx b = rep.path_b.limit[j];
    rows.push_back({rep.times[j], a.real(), a.imag(), b.real(), b.imag()});
  }
  out.write("limits.csv", io::csv_table({"t", "re_path_a", "im_path_a", "re_path_b", "im_path_b"}, rows));
  json j = io::to_json(rep);
  j["pass"] = rep.commutes;
  out.write_json("report.json", j);
  return finish(rep.commutes, rc.check);
}

int cmd_kernels(const RunConfig& rc) {
  const TimeWindow window = TimeWindow::resolving(rc.Nk);
  json records = json::array();
  std::vector<std::vector<double>> rows;
  double lo = INFINITY, hi = 0.0;
  std::vector<double> diffs;
  for (double g : rc.gammas) {
    const KernelSpec spec{g, rc.Nk};
    const SobolevTimeNorm n = windowed_kernel_sobolev_norm(spec, rc.s, window);
    const double d = g > 0.0 ? kernel_difference_norm(g, rc.Nk, rc.s, window) : 0.0;
    json rec = io::kernel_record(spec, n);
    rec["difference_norm"] = d;
    records.push_back(rec);
    rows.push_back({g, static_cast<double>(rc.Nk), rc.s, n.value, d});
    lo = std::min(lo, n.value);
    hi = std::max(hi, n.value);
    diffs.push_back(d);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    if (rc.gammas[i] < rc.gammas[i - 1] && !(diffs[i] < diffs[i - 1])) decreasing = false;
  }
  const double spread = lo > 0.0 ? hi / lo : INFINITY;
  const bool ok = spread <= 3.0 && decreasing;
  Output out(rc);
  out.write("norms.csv", io::csv_table({"gamma", "N_k", "s", "norm", "difference_norm"}, rows));
  out.write_json("report.json", {{"window", io::to_json(window)},
                                 {"records", records},
                                 {"uniformity_ratio", io::json(std::isfinite(spread) ? json(spread) : json(nullptr))},
                                 {"difference_decreasing", decreasing},
                                 {"pass", ok}});
  return finish(ok, rc.check);
}

struct SuiteResult {
  bool pass = true;
  json summary;
};

SuiteResult suite_lemma_b(const Output& out) {
  std::vector<double> m;
  for (int i = 1; i <= 200; ++i) m.push_back(i);
  const auto irr = irrational_samples(50);
  m.insert(m.end(), irr.begin(), irr.end());
  const long N = 200000;
  const double tail = combinatorial_tail(N);
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (double mv : m) {
    const double v = combinatorial_partial_sum(mv, N) + tail;
    worst = std::max(worst, v);
    const double cap = calibration::kCombinatorialCap;
    rows.push_back({mv, static_cast<double>(N), v, cap, v / cap, v <= cap ? 1.0 : 0.0});
  }
  out.write("lemmaB.csv", io::csv_table({"m", "N", "value", "bound", "ratio", "pass"}, rows));
  auto seq = [](int k) { return 1.0 / (1.0 + static_cast<double>(k) * k); };
  const double s32 = full_summability_check(seq, 32, 3);
  const double s64 = full_summability_check(seq, 64, 3);
  const double change = std::abs(s64 - s32) / s64;
  SuiteResult r;
  r.pass = worst <= calibration::kCombinatorialCap && change <= 0.02;
  r.summary = {{"max_value", worst},
               {"cap", calibration::kCombinatorialCap},
               {"summability_32", s32},
               {"summability_64", s64},
               {"relative_change", change},
               {"pass", r.pass}};
  return r;
}

SuiteResult suite_indicator(const Output& out) {
  SuiteResult r;
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (double a : {0.1, 0.5, 1.0}) {
    for (double s : {0.2, 0.3, 0.45}) {
      const IndicatorNorm n = indicator_hs_norm(a, s);
      const double rel = std::abs(n.quadrature - n.closed_form) / n.closed_form;
      worst = std::max(worst, rel);
      rows.push_back({a, s, n.quadrature, n.closed_form, n.quadrature / n.closed_form, rel <= 1e-4 ? 1.0 : 0.0});
    }
  }
  out.write("indicator.csv", io::csv_table({"a", "s", "value", "bound", "ratio", "pass"}, rows));
  r.pass = worst <= 1e-4;
  r.summary = {{"max_relative_difference", worst}, {"tolerance", 1e-4}, {"pass", r.pass}};
  return r;
}

SuiteResult suite_lorentzian(const Output& out) {
  SuiteResult r;
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (double g : {0.05, 0.1, 0.5}) {
    for (int n : {1, 2, 8}) {
      const double closed = lorentzian_l2_sq(g, n);
      const double quad = lorentzian_l2_sq_quadrature(g, n);
      const double rel = std::abs(quad - closed) / closed;
      worst = std::max(worst, rel);
      rows.push_back({g, static_cast<double>(n), quad, closed, quad / closed, rel <= 1e-6 ? 1.0 : 0.0});
    }
  }
  out.write("lorentzian.csv", io::csv_table({"gamma", "n", "value", "bound", "ratio", "pass"}, rows));
  r.pass = worst <= 1e-6;
  r.summary = {{"max_relative_difference", worst}, {"tolerance", 1e-6}, {"pass", r.pass}};
  return r;
}

std::vector<double> heat_time_grid() {
  std::vector<double> t;
  for (int i = 0; i < 25; ++i) t.push_back(0.01 * std::pow(1000.0, i / 24.0));
  t.back() = 10.0;
  return t;
}

SuiteResult suite_heat(const Output& out) {
  SuiteResult r;
  const double gamma = 0.1;
  const auto t = heat_time_grid();
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const BoundCheck b = heat_smoothing_ratio(gamma, 0.0, 1.0, t, {random_hs_field(1.0, 64, seed)},
                                              calibration::kHeatSmoothingCap);
    worst = std::max(worst, b.ratio);
    rows.push_back({static_cast<double>(seed), gamma, b.quantity, b.bound, b.ratio, b.pass ? 1.0 : 0.0});
  }
  out.write("heat.csv", io::csv_table({"seed", "gamma", "value", "bound", "ratio", "pass"}, rows));
  r.pass = worst <= calibration::kHeatSmoothingCap;
  r.summary = {{"max_ratio", worst}, {"cap", calibration::kHeatSmoothingCap}, {"pass", r.pass}};
  return r;
}

SuiteResult suite_modes(const Output& out) {
  SuiteResult r;
  std::vector<std::vector<double>> rows;
  double low = 0.0, high = 0.0;
  for (int n : {4, 8, 16, 32, 64}) {
    const TimeWindow w = TimeWindow::resolving(n);
    for (double g : {0.01, 0.025, 0.05, 0.1, 0.2, 0.5}) {
      const ModeBoundReport m = verify_mode_bounds(n, g, 0.49, w);
      low = std::max(low, m.low_ratio);
      high = std::max(high, m.high_ratio);
      const bool ok = m.low_ratio <= calibration::kModeLowRatioCap && m.high_ratio <= calibration::kModeHighRatioCap;
      rows.push_back({static_cast<double>(n), g, m.low_ratio, calibration::kModeLowRatioCap, m.high_ratio,
                      calibration::kModeHighRatioCap, ok ? 1.0 : 0.0});
    }
  }
  out.write("modes.csv", io::csv_table({"n", "gamma", "low_ratio", "low_cap", "high_ratio", "high_cap", "pass"}, rows));
  r.pass = low <= calibration::kModeLowRatioCap && high <= calibration::kModeHighRatioCap;
  r.summary = {{"max_low_ratio", low},
               {"low_cap", calibration::kModeLowRatioCap},
               {"max_high_ratio", high},
               {"high_cap", calibration::kModeHighRatioCap},
               {"pass", r.pass}};
  return r;
}

int cmd_validate(const RunConfig& rc) {
  const std::map<std::string, std::function<SuiteResult(const Output&)>> suites = {
      {"lemmaB", suite_lemma_b},   {"indicator", suite_indicator}, {"lorentzian", suite_lorentzian},
      {"heat", suite_heat},        {"modes", suite_modes}};
  std::vector<std::string> chosen;
  if (rc.suite == "all") {
    for (const auto& [name, _] : suites) chosen.push_back(name);
  } else if (suites.count(rc.suite)) {
    chosen.push_back(rc.suite);
  } else {
    throw std::invalid_argument("unknown validation suite \"" + rc.suite + "\"");
  }
  Output out(rc);
  json summary = json::object();
  bool ok = true;
  for (const auto& name : chosen) {
    const SuiteResult r = suites.at(name)(out);
    summary[name] = r.summary;
    ok = ok && r.pass;
  }
  summary["pass"] = ok;
  out.write_json("report.json", summary);
  return finish(ok, rc.check);
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  RunConfig rc;
  CLI::App app{"Spectral solvers and validators for NLS with a concentrated nonlinearity", "cnls"};
  app.require_subcommand(1);
  std::map<std::string, Registry> registries;

  auto add_common = [&](CLI::App* sub) {
    Registry& reg = registries[sub->get_name()];
    sub->add_option("--config", rc.config_path, "JSON file with option values (keys as option names)");
    bind_option(sub, reg, "out", rc.out, "output directory");
    sub->add_flag("--check", rc.check, "exit with code 2 when the run's assertions fail");
    return &reg;
  };
  auto add_physics = [&](CLI::App* sub, Registry& reg) {
    bind_option(sub, reg, "u0", rc.u0, "initial data: preset:plane_wave[:k[:amp]], preset:constant[:c], "
                                "preset:random_hs[:s[:seed]] or file:<path>");
    bind_option(sub, reg, "seed", rc.seed, "seed for preset:random_hs");
    bind_option(sub, reg, "N", rc.N, "mode cutoff");
    bind_option(sub, reg, "dt", rc.dt, "time step");
    bind_option(sub, reg, "T", rc.T, "horizon");
    bind_option(sub, reg, "lambda", rc.lambda, "+1 defocusing, -1 focusing, 0 linear");
    bind_option(sub, reg, "p", rc.p, "nonlinearity power");
    bind_option(sub, reg, "x0", rc.x0, "delta location");
  };
  auto add_mollified = [&](CLI::App* sub, Registry& reg) {
    bind_option(sub, reg, "eps", rc.eps, "mollifier width");
    bind_option(sub, reg, "dealias", rc.dealias, "nonlinear substep on the doubled grid");
    bind_option(sub, reg, "stride", rc.stride, "snapshot stride in steps");
  };

  auto* snls = app.add_subcommand("snls", "smoothed NLS by Strang splitting");
  {
    auto& reg = *add_common(snls);
    add_physics(snls, reg);
    add_mollified(snls, reg);
  }
  auto* scgl = app.add_subcommand("scgl", "smoothed Ginzburg-Landau by Strang splitting");
  {
    auto& reg = *add_common(scgl);
    add_physics(scgl, reg);
    add_mollified(scgl, reg);
    bind_option(scgl, reg, "gamma", rc.gamma, "dissipation");
  }
  auto* charge = app.add_subcommand("charge", "Volterra charge equation and field reconstruction");
  double charge_gamma = 0.0;
  {
    auto& reg = *add_common(charge);
    add_physics(charge, reg);
    bind_option(charge, reg, "gamma", charge_gamma, "dissipation (0 for the Schrodinger kernel)");
  }
  auto* sweep_eps = app.add_subcommand("sweep-eps", "epsilon -> 0 sweep against the charge reconstruction");
  {
    auto& reg = *add_common(sweep_eps);
    add_physics(sweep_eps, reg);
    add_mollified(sweep_eps, reg);
    bind_option(sweep_eps, reg, "ladder", rc.ladder, "decreasing epsilon values (default 0.4,0.2,0.1,0.05)");
    bind_option(sweep_eps, reg, "s", rc.s, "Sobolev exponent of the error metric");
  }
  auto* sweep_gamma = app.add_subcommand("sweep-gamma", "gamma -> 0 sweep of the charge");
  {
    auto& reg = *add_common(sweep_gamma);
    add_physics(sweep_gamma, reg);
    bind_option(sweep_gamma, reg, "ladder", rc.ladder, "decreasing gamma values (default 0.2,0.1,0.05,0.025)");
  }
  auto* diagram = app.add_subcommand("diagram", "both limit orders towards the concentrated problem");
  {
    auto& reg = *add_common(diagram);
    add_physics(diagram, reg);
    add_mollified(diagram, reg);
    bind_option(diagram, reg, "eps_ladder", rc.eps_ladder, "decreasing epsilon values");
    bind_option(diagram, reg, "gamma_ladder", rc.gamma_ladder, "decreasing gamma values");
  }
  auto* kernels = app.add_subcommand("kernels", "windowed H^{-s} norms of the truncated kernels");
  double kernel_s = 0.49;
  {
    auto& reg = *add_common(kernels);
    bind_option(kernels, reg, "Nk", rc.Nk, "kernel mode cutoff");
    bind_option(kernels, reg, "s", kernel_s, "exponent of the H^{-s} time norm");
    bind_option(kernels, reg, "gammas", rc.gammas, "gamma values");
  }
  auto* validate = app.add_subcommand("validate", "closed-form validators");
  {
    auto& reg = *add_common(validate);
    bind_option(validate, reg, "suite", rc.suite, "all, lemmaB, indicator, lorentzian, heat or modes");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help();
    print_error("UsageError", e.what());
    return kExitError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    rc.subcommand = sub->get_name();
    Registry& reg = registries.at(rc.subcommand);
    if (!rc.config_path.empty()) apply_config_file(rc.config_path, reg);
    if (rc.subcommand == "charge") rc.gamma = charge_gamma;
    if (rc.subcommand == "kernels") rc.s = kernel_s;

    json echo = {{"subcommand", rc.subcommand}};
    for (const auto& key : reg.order) echo[key] = reg.echo.at(key)();
    Output(rc).write_json("config.json", echo);

    const auto start = std::chrono::steady_clock::now();
    int code = kExitError;
    if (rc.subcommand == "snls") code = cmd_trajectory(rc, false);
    else if (rc.subcommand == "scgl") code = cmd_trajectory(rc, true);
    else if (rc.subcommand == "charge") code = cmd_charge(rc);
    else if (rc.subcommand == "sweep-eps") code = cmd_sweep_eps(rc);
    else if (rc.subcommand == "sweep-gamma") code = cmd_sweep_gamma(rc);
    else if (rc.subcommand == "diagram") code = cmd_diagram(rc);
    else if (rc.subcommand == "kernels") code = cmd_kernels(rc);
    else if (rc.subcommand == "validate") code = cmd_validate(rc);
    log_timing(rc.subcommand, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return code;
  } catch (const SolverError& e) {
    print_error(std::string(to_string(e.kind())), e.what());
  } catch (const std::invalid_argument& e) {
    print_error("InvalidArgument", e.what());
  } catch (const std::exception& e) {
    print_error("RuntimeError", e.what());
  }
  return kExitError;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"cnls"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace cnls::cli
