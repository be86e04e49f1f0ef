#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "cnls/cli.hpp"
#include "cnls/io.hpp"

using namespace cnls;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cnls_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

struct Captured {
  int code;
  std::string err;
};

Captured run_cli(const std::vector<std::string>& args) {
  std::ostringstream err;
  auto* old = std::cerr.rdbuf(err.rdbuf());
  const int code = cli::run(args);
  std::cerr.rdbuf(old);
  return {code, err.str()};
}

}  // namespace

TEST_CASE("field JSON round trip is bit exact") {
  const auto f = random_hs_field(0.8, 16, 21);
  const auto j = io::field_to_json(f);
  CHECK(io::field_from_json(io::json::parse(j.dump())) == f);
  auto bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(io::field_from_json(bad), std::invalid_argument);
  CHECK_THROWS_AS(io::field_from_json(io::json::parse(R"({"N": 1, "coeffs": [[0,0],[1,0]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::field_from_json(io::json::parse(R"({"N": 0, "coeffs": [[0]]})")), std::invalid_argument);
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.283185307179586, 1e-300, -2.5e17}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("atomic write") {
  const fs::path dir = scratch("atomic");
  const fs::path target = dir / "nested" / "out.csv";
  io::atomic_write(target, "a,b\n1,2\n");
  CHECK(slurp(target) == "a,b\n1,2\n");
  io::atomic_write(target, "x\n");
  CHECK(slurp(target) == "x\n");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(target.parent_path())) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  CHECK_THROWS_AS(io::csv_table({"a", "b"}, {{1.0}}), std::invalid_argument);
}

TEST_CASE("CLI charge example") {
  const fs::path dir = scratch("charge");
  const auto r = run_cli({"charge", "--u0", "preset:plane_wave", "--T", "0.5", "--dt", "1e-3", "--N", "64", "--out",
                          dir.string()});
  CHECK(r.code == cli::kExitOk);
  const auto rows = lines(slurp(dir / "charge_charge.csv"));
  REQUIRE(rows.size() == 502);
  CHECK(rows[0] == "t,re_q,im_q,abs_q,picard_iters");
  CHECK(rows[1].rfind("0,1,0,1,", 0) == 0);
  const auto echo = io::json::parse(slurp(dir / "charge_config.json"));
  CHECK(echo["subcommand"] == "charge");
  CHECK(echo["gamma"] == 0.0);
  CHECK(echo["N"] == 64);
  CHECK(fs::exists(dir / "charge_report.json"));
  CHECK(fs::exists(dir / "charge_final.json"));
}

TEST_CASE("CLI validate suite") {
  const fs::path dir = scratch("validate");
  const auto r = run_cli({"validate", "--suite", "lemmaB", "--check", "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  const auto rows = lines(slurp(dir / "validate_lemmaB.csv"));
  CHECK(rows[0] == "m,N,value,bound,ratio,pass");
  CHECK(rows.size() == 251);
  CHECK(io::json::parse(slurp(dir / "validate_report.json"))["pass"] == true);
}

TEST_CASE("CLI usage errors") {
  const auto r = run_cli({"snls", "--bogus"});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(r.err.find("\"UsageError\"") != std::string::npos);
  CHECK(run_cli({}).code == cli::kExitError);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitError);
}

TEST_CASE("CLI reports module errors as JSON") {
  const fs::path dir = scratch("errors");
  auto r = run_cli({"snls", "--u0", "preset:nope", "--out", dir.string()});
  CHECK(r.code == cli::kExitError);
  const auto err = io::json::parse(r.err.substr(r.err.find('{')));
  CHECK(err["error"]["kind"] == "InvalidArgument");

  // T is not a multiple of dt.
  r = run_cli({"snls", "--T", "0.0105", "--dt", "1e-3", "--out", dir.string()});
  CHECK(r.code == cli::kExitError);
}

TEST_CASE("CLI config files") {
  const fs::path dir = scratch("config");
  {
    std::ofstream(dir / "good.json") << R"({"N": 32, "dt": 0.002, "T": 0.1, "u0": "preset:random_hs:1:4"})";
    std::ofstream(dir / "bad.json") << R"({"N": 32, "wat": 1})";
    std::ofstream(dir / "typed.json") << R"({"N": "many"})";
  }
  auto r = run_cli({"snls", "--config", (dir / "good.json").string(), "--T", "0.05", "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  const auto echo = io::json::parse(slurp(dir / "snls_config.json"));
  CHECK(echo["N"] == 32);
  CHECK(echo["dt"] == 0.002);
  CHECK(echo["T"] == 0.05);  // command line wins
  CHECK(echo["u0"] == "preset:random_hs:1:4");
  CHECK(lines(slurp(dir / "snls_trajectory.csv")).size() == 27);

  r = run_cli({"snls", "--config", (dir / "bad.json").string(), "--out", dir.string()});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("wat") != std::string::npos);
  CHECK(run_cli({"snls", "--config", (dir / "typed.json").string(), "--out", dir.string()}).code == cli::kExitError);
  CHECK(run_cli({"snls", "--config", (dir / "missing.json").string(), "--out", dir.string()}).code ==
        cli::kExitError);
}

TEST_CASE("CLI initial data from a file") {
  const fs::path dir = scratch("file");
  const auto f = random_hs_field(1.0, 16, 5);
  io::atomic_write(dir / "u0.json", io::field_to_json(f).dump());
  const auto r =
      run_cli({"charge", "--u0", "file:" + (dir / "u0.json").string(), "--N", "16", "--T", "0.01", "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  const auto rows = lines(slurp(dir / "charge_charge.csv"));
  const double q0 = std::stod(rows[1].substr(2, rows[1].find(',', 2) - 2));
  CHECK(q0 == doctest::Approx(eval_at(f, 0.0).real()).epsilon(1e-14));
}

TEST_CASE("CLI outputs are byte identical across runs") {
  const std::vector<std::vector<std::string>> runs{
      {"snls", "--u0", "preset:random_hs:1:7", "--T", "0.05"},
      {"scgl", "--u0", "preset:random_hs:1:7", "--T", "0.05", "--gamma", "0.3"},
      {"charge", "--u0", "preset:plane_wave:1:0.5", "--T", "0.1"},
      {"sweep-gamma", "--u0", "preset:plane_wave:1:0.5", "--T", "0.1"},
      {"sweep-eps", "--u0", "preset:plane_wave:1:0.5", "--T", "0.05"},
  };
  for (const auto& args : runs) {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    auto with = [&](const fs::path& d) {
      auto v = args;
      v.push_back("--out");
      v.push_back(d.string());
      return v;
    };
    REQUIRE(run_cli(with(a)).code == cli::kExitOk);
    REQUIRE(run_cli(with(b)).code == cli::kExitOk);
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      const auto name = e.path().filename();
      if (name.extension() != ".csv" && name.extension() != ".json") continue;
      if (name.string().find("_config.json") != std::string::npos) continue;  // echoes the directory
      CHECK(slurp(e.path()) == slurp(b / name));
      ++compared;
    }
    CHECK(compared >= 2);
  }
}

TEST_CASE("CLI check mode exit codes") {
  const fs::path dir = scratch("check");
  // At the default N = 64 the finest epsilon rung is under-resolved and the
  // two limits disagree by more than their extrapolation errors.
  auto r = run_cli({"diagram", "--u0", "preset:plane_wave:1:0.5", "--check", "--out", dir.string()});
  CHECK(r.code == cli::kExitCheckFailed);
  CHECK(io::json::parse(slurp(dir / "diagram_report.json"))["pass"] == false);
  r = run_cli({"diagram", "--u0", "preset:plane_wave:1:0.5", "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  r = run_cli({"kernels", "--Nk", "32", "--gammas", "0.2,0.1", "--check", "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  const auto rows = lines(slurp(dir / "kernels_norms.csv"));
  CHECK(rows.size() == 3);
}
