#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "stefan/cli.hpp"

using namespace stefan;
using namespace stefan::cli;
namespace fs = std::filesystem;

namespace {

const char* kFlux = R"({
  "schema_version": 1,
  "mode": "solve_flux",
  "dimensionless": {"a": 1, "alpha0": 0.5, "nu": 0.5, "qstar": 1, "M": 1},
  "model": {"kind": "linear", "alpha": 0.1, "beta": 0.1}
})";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("stefan_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mode and format names") {
  for (Mode m : {Mode::Vapor, Mode::SolveFlux, Mode::SolveConvective, Mode::ClosedForm, Mode::Verify}) {
    CHECK(parse_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_mode("melt"), ConfigError);
  CHECK(parse_format("json") == OutputFormat::Json);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("config parsing") {
  const ScenarioConfig c = parse_config(kFlux);
  CHECK(c.mode == Mode::SolveFlux);
  REQUIRE(c.dimensionless);
  CHECK(c.dimensionless->alpha0 == 0.5);
  CHECK(c.model.alpha() == doctest::Approx(0.1));
  CHECK(parse_config(kFlux, Mode::Verify).mode == Mode::Verify);
  CHECK_THROWS_AS(parse_config(kFlux, Mode::ClosedForm), ConfigError);

  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"schema_version": 2, "mode": "vapor"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"schema_version": 1, "mode": "vapor", "bogus": 1})"), ConfigError);
  try {
    parse_config(R"({"schema_version": 1, "mode": "solve_flux",
                     "dimensionless": {"a": 1, "alpha0": 0.5, "nu": 1.5, "qstar": 1, "M": 1}})");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("nu") != std::string::npos);
  }
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 6.02e23, -2.5e-300}) CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("run writes a summary and a profile") {
  const fs::path dir = scratch("flux");
  RunOptions o;
  o.config_path = write(dir, kFlux);
  o.out_dir = dir / "out";
  o.quiet = true;
  std::ostringstream out, err;
  REQUIRE(run(o, out, err) == kExitOk);
  const auto summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
  CHECK(summary["mode"] == "solve_flux");
  CHECK(summary["xi"].get<double>() > 0.5);
  const std::string csv = slurp(dir / "out" / "profile.csv");
  CHECK(csv.rfind("eta,u2,theta\n", 0) == 0);

  o.format = "json";
  o.out_dir = dir / "out_json";
  REQUIRE(run(o, out, err) == kExitOk);
  const auto profile = nlohmann::json::parse(slurp(dir / "out_json" / "profile.json"));
  CHECK(profile["eta"].size() == profile["u2"].size());
}

TEST_CASE("exit statuses") {
  const fs::path dir = scratch("status");
  RunOptions o;
  o.quiet = true;
  o.out_dir = dir;
  std::ostringstream out, err;
  o.config_path = dir / "missing.json";
  CHECK(run(o, out, err) == kExitConfig);
  o.config_path = write(dir, R"({"schema_version": 1, "mode": "solve_flux",
      "dimensionless": {"a": 1, "alpha0": 2, "nu": 0.5, "qstar": 0.1, "M": 5}})");
  CHECK(run(o, out, err) == kExitSolver);
  CHECK(!err.str().empty());
}

TEST_CASE("the binary is deterministic") {
  const fs::path dir = scratch("binary");
  const fs::path cfg = write(dir, kFlux);
  const std::string bin = STEFAN_SIM_PATH;
  for (const char* sub : {"a", "b"}) {
    const std::string cmd = bin + " --quiet --config " + cfg.string() + " --out " + (dir / sub).string();
    REQUIRE(std::system(cmd.c_str()) == 0);
  }
  CHECK(slurp(dir / "a" / "profile.csv") == slurp(dir / "b" / "profile.csv"));
  CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));
}
