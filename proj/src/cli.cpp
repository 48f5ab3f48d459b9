#include "stefan/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "stefan/closedform.hpp"
#include "stefan/freeboundary.hpp"
#include "stefan/vapor.hpp"

namespace stefan::cli {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

const json& require_object(const json& parent, const char* key, const std::string& where) {
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(where + "." + key + ": expected an object");
  return v;
}

double read_number(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key + ": must be finite");
  return x;
}

void read_optional(const json& obj, const char* key, const std::string& where, double& target) {
  if (obj.contains(key)) target = read_number(obj, key, where);
}

int read_int(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string read_string(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> read_array(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

PhysicalParams read_physical(const json& obj) {
  const std::string w = "physical";
  reject_unknown(obj, w,
                 {"lambda0", "c0", "rho0", "theta_m", "theta_b", "theta_im", "theta_star", "l_m", "l_b", "gamma_m",
                  "gamma_b", "P0", "nu"});
  PhysicalParams p;
  read_optional(obj, "lambda0", w, p.lambda0);
  read_optional(obj, "c0", w, p.c0);
  read_optional(obj, "rho0", w, p.rho0);
  read_optional(obj, "theta_m", w, p.theta_m);
  read_optional(obj, "theta_b", w, p.theta_b);
  read_optional(obj, "theta_im", w, p.theta_im);
  read_optional(obj, "theta_star", w, p.theta_star);
  read_optional(obj, "l_m", w, p.l_m);
  read_optional(obj, "l_b", w, p.l_b);
  read_optional(obj, "gamma_m", w, p.gamma_m);
  read_optional(obj, "gamma_b", w, p.gamma_b);
  read_optional(obj, "P0", w, p.P0);
  read_optional(obj, "nu", w, p.nu);
  try {
    p.validate();
  } catch (const InvalidParameterError& e) {
    throw ConfigError(w + ": " + e.what());
  }
  return p;
}

CoefficientModel read_model(const json& obj) {
  const std::string w = "model";
  const std::string kind = read_string(obj, "kind", w);
  try {
    if (kind == "constant") {
      reject_unknown(obj, w, {"kind"});
      return CoefficientModel::constant();
    }
    if (kind == "linear") {
      reject_unknown(obj, w, {"kind", "alpha", "beta"});
      return CoefficientModel::linear(read_number(obj, "alpha", w), read_number(obj, "beta", w));
    }
    if (kind == "table") {
      reject_unknown(obj, w, {"kind", "u", "L", "N"});
      return CoefficientModel::table(read_array(obj, "u", w), read_array(obj, "L", w), read_array(obj, "N", w));
    }
  } catch (const InvalidParameterError& e) {
    throw ConfigError(w + ": " + e.what());
  }
  throw ConfigError("model.kind: expected constant, linear or table, got '" + kind + "'");
}

BoundaryKind parse_boundary(const std::string& text) {
  if (text == "flux") return BoundaryKind::HeatFlux;
  if (text == "convective") return BoundaryKind::Convective;
  throw ConfigError("boundary: expected flux or convective, got '" + text + "'");
}

const char* boundary_name(BoundaryKind bc) { return bc == BoundaryKind::HeatFlux ? "flux" : "convective"; }

std::vector<BoundaryKind> boundaries_for(const ScenarioConfig& c) {
  switch (c.mode) {
    case Mode::SolveFlux:
      return {BoundaryKind::HeatFlux};
    case Mode::SolveConvective:
      return {BoundaryKind::Convective};
    case Mode::ClosedForm:
    case Mode::Verify:
      return {c.boundary};
    case Mode::Vapor:
      break;
  }
  return {};
}

void check_mode_requirements(const ScenarioConfig& c) {
  if (c.physical && c.dimensionless) {
    throw ConfigError("config: give either 'physical' or 'dimensionless', not both");
  }
  if (c.mode == Mode::Vapor) {
    if (!c.physical && !c.vapor_DE) throw ConfigError("vapor mode: needs a 'physical' block or 'vapor' {D, E}");
    return;
  }
  if (!c.physical && !c.dimensionless) {
    throw ConfigError(std::string(to_string(c.mode)) + " mode: needs a 'physical' or 'dimensionless' block");
  }
  if (c.mode == Mode::ClosedForm) {
    const bool constant = c.model.kind() == CoefficientModel::Kind::Constant;
    const bool linear_conv =
        c.model.kind() == CoefficientModel::Kind::Linear && c.boundary == BoundaryKind::Convective;
    if (!constant && !linear_conv) {
      throw ConfigError("closed_form mode: needs the constant model, or the linear model with the convective boundary");
    }
  }
  if (c.dimensionless) {
    for (BoundaryKind bc : boundaries_for(c)) {
      try {
        build_problem(c, bc).validate();
      } catch (const InvalidParameterError& e) {
        throw ConfigError(std::string("dimensionless: ") + e.what());
      }
    }
  }
}

ClosedFormCase closed_form_case(const DimensionlessProblem& p) {
  ClosedFormCase c;
  c.a = p.a;
  c.nu = p.nu;
  c.alpha0 = p.alpha0;
  if (p.bc == BoundaryKind::HeatFlux) {
    c.kind = ClosedFormKind::ConstantFlux;
    c.qstar = p.qstar;
    return c;
  }
  c.pstar = p.pstar;
  c.Ste = p.Ste;
  if (p.model.kind() == CoefficientModel::Kind::Linear) {
    c.kind = ClosedFormKind::LinearConvective;
    c.alpha = p.model.alpha();
    c.beta = p.model.beta();
  } else {
    c.kind = ClosedFormKind::ConstantConvective;
  }
  return c;
}

bool closed_form_applies(const DimensionlessProblem& p) {
  if (p.model.kind() == CoefficientModel::Kind::Constant) return true;
  return p.model.kind() == CoefficientModel::Kind::Linear && p.bc == BoundaryKind::Convective;
}

struct ClosedFormSolution {
  double xi;
  ProfileFunction profile;
};

ClosedFormSolution solve_closed_form(const DimensionlessProblem& p, std::size_t nodes) {
  const ClosedFormCase c = closed_form_case(p);
  double xi = 0.0;
  switch (c.kind) {
    case ClosedFormKind::ConstantFlux:
      xi = constant_flux_front(c, p.M);
      break;
    case ClosedFormKind::ConstantConvective:
      xi = constant_convective_front(c);
      break;
    case ClosedFormKind::LinearConvective:
      xi = linear_convective_front(c);
      break;
  }
  std::vector<double> grid = ProfileFunction::uniform_grid(p.alpha0, xi, nodes);
  std::vector<double> u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    switch (c.kind) {
      case ClosedFormKind::ConstantFlux:
        u[i] = constant_flux_profile(c, xi, grid[i]);
        break;
      case ClosedFormKind::ConstantConvective:
        u[i] = constant_convective_profile(c, xi, grid[i]);
        break;
      case ClosedFormKind::LinearConvective:
        u[i] = linear_convective_profile(c, xi, grid[i]);
        break;
    }
  }
  return {xi, ProfileFunction(std::move(grid), std::move(u))};
}

ojson finite_or_null(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson problem_record(const DimensionlessProblem& p) {
  ojson r;
  r["boundary"] = boundary_name(p.bc);
  r["a"] = p.a;
  r["alpha0"] = p.alpha0;
  r["nu"] = p.nu;
  if (p.bc == BoundaryKind::HeatFlux) {
    r["qstar"] = p.qstar;
    r["M"] = p.M;
  } else {
    r["pstar"] = p.pstar;
    r["Ste"] = p.Ste;
  }
  r["u_range"] = {p.u_lo, p.u_hi};
  return r;
}

ojson residual_record(const SolutionResiduals& r) {
  ojson o;
  o["boundary"] = r.boundary;
  o["front_value"] = r.front_value;
  o["stefan"] = r.stefan;
  o["ode"] = r.ode;
  return o;
}

ProfileTable make_table(const ProfileFunction& u, const DimensionlessProblem& p, double theta_m, double theta_star) {
  ProfileTable t;
  for (std::size_t i = 0; i < u.size(); ++i) {
    t.eta.push_back(u.grid()[i]);
    t.u2.push_back(u.values()[i]);
    t.theta.push_back(temperature_from_u(u.values()[i], p.bc, theta_m, theta_star));
  }
  return t;
}

std::pair<double, double> temperatures(const ScenarioConfig& c) {
  if (c.physical) return {c.physical->theta_m, c.physical->theta_star};
  return {c.theta_m, c.theta_star};
}

ojson front_record(const FrontSolveReport& r) {
  ojson o;
  o["xi"] = r.xi;
  o["defect"] = r.defect;
  o["xi1"] = r.xi1;
  o["xi2"] = r.xi2;
  o["xi_star"] = finite_or_null(r.xi_star);
  o["iterations"] = r.solution.iterations;
  o["probes"] = r.phi_values.size();
  o["epsilon_estimate"] = r.solution.epsilon_estimate;
  o["epsilon_bound"] = r.solution.epsilon_bound;
  o["admissible"] = r.admissible;
  o["latent_heat_ok"] = r.latent_heat_ok;
  o["monotone_matching"] = r.monotone_matching;
  o["multiplicity_warning"] = r.multiplicity_warning;
  o["sign_changes"] = r.sign_changes;
  return o;
}

SolveReport run_vapor(const ScenarioConfig& c) {
  SolveReport report;
  ojson& s = report.summary;
  s["mode"] = to_string(c.mode);
  VaporSolution v = c.vapor_DE ? solve_alpha0(c.vapor_DE->first, c.vapor_DE->second) : solve_alpha0(*c.physical);
  s["alpha0"] = v.alpha0;
  s["D"] = v.D;
  s["E"] = v.E;
  s["ambiguous"] = v.ambiguous;
  s["other_root"] = v.other_root;
  s["quadratic_residual"] = std::abs(v.alpha0 * v.alpha0 + v.D * v.alpha0 + v.E);
  if (!c.vapor_DE) {
    s["A_times_t"] = v.A_scaled;
    s["B"] = v.B;
    s["C"] = v.C;
    ojson balance = ojson::array();
    for (double t : {0.5, 1.0, 4.0}) {
      balance.push_back({{"t", t}, {"residual", vapor_flux_balance_residual(v, *c.physical, t)}});
    }
    s["flux_balance"] = balance;
  }
  return report;
}

SolveReport run_solve(const ScenarioConfig& c, BoundaryKind bc) {
  const DimensionlessProblem p = build_problem(c, bc);
  const FrontSolveReport fr = solve_front(p, c.solver);
  SolveReport report;
  ojson& s = report.summary;
  s["mode"] = to_string(c.mode);
  s["alpha0"] = p.alpha0;
  s["problem"] = problem_record(p);
  s.update(front_record(fr));
  s["residuals"] = residual_record(solution_residuals(p, fr.solution.profile));
  const auto [tm, ts] = temperatures(c);
  report.profile = make_table(fr.solution.profile, p, tm, ts);
  return report;
}

SolveReport run_closed_form(const ScenarioConfig& c) {
  const DimensionlessProblem p = build_problem(c, c.boundary);
  const ClosedFormSolution cf = solve_closed_form(p, c.solver.grid_nodes);
  SolveReport report;
  ojson& s = report.summary;
  s["mode"] = to_string(c.mode);
  s["alpha0"] = p.alpha0;
  s["problem"] = problem_record(p);
  s["xi"] = cf.xi;
  if (c.physical && p.bc == BoundaryKind::HeatFlux) {
    s["xi_dimensional_matching"] = constant_flux_front(closed_form_case(p), *c.physical);
  }
  const auto [tm, ts] = temperatures(c);
  report.profile = make_table(cf.profile, p, tm, ts);
  return report;
}

SolveReport run_verify(const ScenarioConfig& c, unsigned threads) {
  const DimensionlessProblem p = build_problem(c, c.boundary);
  ShootingConfig oc = c.oracle;
  oc.output_nodes = c.solver.grid_nodes;
  auto oracle_task = [&] { return shoot(p, oc); };

  std::optional<ShootingResult> oracle;
  std::future<ShootingResult> pending;
  if (threads > 1) pending = std::async(std::launch::async, oracle_task);
  const FrontSolveReport fr = solve_front(p, c.solver);
  oracle = pending.valid() ? pending.get() : oracle_task();

  SolveReport report;
  ojson& s = report.summary;
  s["mode"] = to_string(c.mode);
  s["alpha0"] = p.alpha0;
  s["problem"] = problem_record(p);
  s.update(front_record(fr));
  s["residuals"] = residual_record(solution_residuals(p, fr.solution.profile));

  ojson table = ojson::array();
  table.push_back({{"method", "pipeline"}, {"xi", fr.xi}, {"xi_difference", 0.0}, {"profile_sup_distance", 0.0}});
  table.push_back({{"method", "oracle"},
                   {"xi", oracle->xi},
                   {"xi_difference", std::abs(oracle->xi - fr.xi)},
                   {"profile_sup_distance", sup_distance_resampled(fr.solution.profile, oracle->profile)}});
  if (closed_form_applies(p)) {
    const ClosedFormSolution cf = solve_closed_form(p, c.solver.grid_nodes);
    table.push_back({{"method", "closed_form"},
                     {"xi", cf.xi},
                     {"xi_difference", std::abs(cf.xi - fr.xi)},
                     {"profile_sup_distance", sup_distance_resampled(fr.solution.profile, cf.profile)}});
  }
  s["comparison"] = table;
  s["oracle"] = {{"u_at_alpha0", oracle->u_at_alpha0},
                 {"stefan_defect", oracle->stefan_defect},
                 {"bisections", oracle->bisections},
                 {"ode_residual", oracle->ode_residual}};
  const auto [tm, ts] = temperatures(c);
  report.profile = make_table(fr.solution.profile, p, tm, ts);
  return report;
}

void check_finite(const ojson& node, const std::string& path) {
  if (node.is_number_float() && !std::isfinite(node.get<double>())) {
    throw NonConvergenceError("non-finite value in output at " + path);
  }
  if (node.is_object()) {
    for (const auto& [k, v] : node.items()) check_finite(v, path + "." + k);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) check_finite(node[i], path + "[" + std::to_string(i) + "]");
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  f << content;
  f.close();
  if (!f) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

ojson profile_json(const ProfileTable& t) {
  ojson o;
  o["eta"] = t.eta;
  o["u2"] = t.u2;
  o["theta"] = t.theta;
  return o;
}

}  // namespace

Mode parse_mode(const std::string& text) {
  if (text == "vapor") return Mode::Vapor;
  if (text == "solve_flux") return Mode::SolveFlux;
  if (text == "solve_convective") return Mode::SolveConvective;
  if (text == "closed_form") return Mode::ClosedForm;
  if (text == "verify") return Mode::Verify;
  throw ConfigError("mode: expected vapor, solve_flux, solve_convective, closed_form or verify, got '" + text + "'");
}

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Vapor:
      return "vapor";
    case Mode::SolveFlux:
      return "solve_flux";
    case Mode::SolveConvective:
      return "solve_convective";
    case Mode::ClosedForm:
      return "closed_form";
    case Mode::Verify:
      return "verify";
  }
  return "unknown";
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("format: expected csv or json, got '" + text + "'");
}

ScenarioConfig parse_config(const std::string& text, std::optional<Mode> mode_override) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column pair.
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root, "config",
                 {"schema_version", "mode", "physical", "dimensionless", "alpha0", "vapor", "model", "boundary",
                  "solver", "oracle", "output"});

  ScenarioConfig c;
  try {
    if (!root.contains("schema_version")) throw ConfigError("schema_version: required field missing");
    const int version = read_int(root, "schema_version", "config");
    if (version != kSchemaVersion) {
      throw ConfigError("schema_version: unsupported version " + std::to_string(version) + ", expected " +
                        std::to_string(kSchemaVersion));
    }
    if (mode_override) {
      c.mode = *mode_override;
    } else if (root.contains("mode")) {
      c.mode = parse_mode(read_string(root, "mode", "config"));
    } else {
      throw ConfigError("mode: required field missing");
    }
    if (root.contains("physical")) c.physical = read_physical(require_object(root, "physical", "config"));
    if (root.contains("alpha0")) {
      c.alpha0 = read_number(root, "alpha0", "config");
      if (!(*c.alpha0 > 0.0)) throw ConfigError("alpha0: must be positive");
    }
    if (root.contains("vapor")) {
      const json& v = require_object(root, "vapor", "config");
      reject_unknown(v, "vapor", {"D", "E"});
      c.vapor_DE = std::make_pair(read_number(v, "D", "vapor"), read_number(v, "E", "vapor"));
    }
    if (root.contains("model")) c.model = read_model(require_object(root, "model", "config"));
    if (root.contains("boundary")) c.boundary = parse_boundary(read_string(root, "boundary", "config"));
    if (root.contains("dimensionless")) {
      const json& d = require_object(root, "dimensionless", "config");
      const std::string w = "dimensionless";
      reject_unknown(d, w, {"a", "alpha0", "nu", "qstar", "pstar", "M", "Ste", "theta_m", "theta_star"});
      DimensionlessProblem p;
      p.qstar = p.pstar = p.M = p.Ste = 0.0;
      read_optional(d, "a", w, p.a);
      read_optional(d, "alpha0", w, p.alpha0);
      read_optional(d, "nu", w, p.nu);
      read_optional(d, "qstar", w, p.qstar);
      read_optional(d, "pstar", w, p.pstar);
      read_optional(d, "M", w, p.M);
      read_optional(d, "Ste", w, p.Ste);
      read_optional(d, "theta_m", w, c.theta_m);
      read_optional(d, "theta_star", w, c.theta_star);
      c.dimensionless = p;
    }
    if (root.contains("solver")) {
      const json& s = require_object(root, "solver", "config");
      reject_unknown(s, "solver", {"tol", "max_iter", "grid_nodes"});
      read_optional(s, "tol", "solver", c.solver.tol);
      if (s.contains("max_iter")) c.solver.max_iter = read_int(s, "max_iter", "solver");
      if (s.contains("grid_nodes")) {
        const int n = read_int(s, "grid_nodes", "solver");
        if (n < 0) throw ConfigError("solver.grid_nodes: must be positive");
        c.solver.grid_nodes = static_cast<std::size_t>(n);
      }
      try {
        c.solver.validate();
      } catch (const InvalidParameterError& e) {
        throw ConfigError(std::string("solver: ") + e.what());
      }
    }
    if (root.contains("oracle")) {
      const json& o = require_object(root, "oracle", "config");
      reject_unknown(o, "oracle", {"rk_tol", "shoot_tol", "max_bisect"});
      read_optional(o, "rk_tol", "oracle", c.oracle.rk_tol);
      read_optional(o, "shoot_tol", "oracle", c.oracle.shoot_tol);
      if (o.contains("max_bisect")) c.oracle.max_bisect = read_int(o, "max_bisect", "oracle");
      try {
        c.oracle.validate();
      } catch (const InvalidParameterError& e) {
        throw ConfigError(std::string("oracle: ") + e.what());
      }
    }
    if (root.contains("output")) {
      const json& o = require_object(root, "output", "config");
      reject_unknown(o, "output", {"dir", "format"});
      if (o.contains("dir")) c.out_dir = read_string(o, "dir", "output");
      if (o.contains("format")) c.format = parse_format(read_string(o, "format", "output"));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  check_mode_requirements(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path, std::optional<Mode> mode_override) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str(), mode_override);
}

DimensionlessProblem build_problem(const ScenarioConfig& c, BoundaryKind bc) {
  if (c.dimensionless) {
    const DimensionlessProblem& d = *c.dimensionless;
    if (bc == BoundaryKind::HeatFlux) return make_flux_problem(d.a, d.alpha0, d.nu, d.qstar, d.M, c.model);
    return make_convective_problem(d.a, d.alpha0, d.nu, d.pstar, d.Ste, c.model);
  }
  if (!c.physical) throw ConfigError("no 'physical' or 'dimensionless' block to build the problem from");
  const double alpha0 = c.alpha0 ? *c.alpha0 : solve_alpha0(*c.physical).alpha0;
  return bc == BoundaryKind::HeatFlux ? reduce_flux(*c.physical, c.model, alpha0)
                                      : reduce_convective(*c.physical, c.model, alpha0);
}

SolveReport execute(const ScenarioConfig& c, unsigned threads) {
  SolveReport report;
  switch (c.mode) {
    case Mode::Vapor:
      report = run_vapor(c);
      break;
    case Mode::SolveFlux:
      report = run_solve(c, BoundaryKind::HeatFlux);
      break;
    case Mode::SolveConvective:
      report = run_solve(c, BoundaryKind::Convective);
      break;
    case Mode::ClosedForm:
      report = run_closed_form(c);
      break;
    case Mode::Verify:
      report = run_verify(c, threads);
      break;
  }
  return report;
}

void require_finite(const SolveReport& report) {
  check_finite(report.summary, "summary");
  if (report.profile) {
    const ProfileTable& t = *report.profile;
    for (const auto* col : {&t.eta, &t.u2, &t.theta}) {
      for (double x : *col) {
        if (!std::isfinite(x)) throw NonConvergenceError("non-finite value in the profile table");
      }
    }
  }
}

std::string format_number(double value) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void emit_summary(const SolveReport& report, const std::filesystem::path& path) {
  write_file(path, report.summary.dump(2) + "\n");
}

void emit_profile(const SolveReport& report, const std::filesystem::path& path, OutputFormat format) {
  if (!report.profile) throw InvalidParameterError("emit_profile: report has no profile table");
  const ProfileTable& t = *report.profile;
  if (format == OutputFormat::Json) {
    ojson o = profile_json(t);
    o["summary"] = report.summary;
    write_file(path, o.dump(2) + "\n");
    return;
  }
  std::string out = "eta,u2,theta\n";
  for (std::size_t i = 0; i < t.eta.size(); ++i) {
    out += format_number(t.eta[i]);
    out += ',';
    out += format_number(t.u2[i]);
    out += ',';
    out += format_number(t.theta[i]);
    out += '\n';
  }
  write_file(path, out);
}

unsigned threads_from_env() {
  const char* raw = std::getenv("STEFAN_SIM_THREADS");
  unsigned n = 0;
  if (raw && *raw) {
    const std::string text(raw);
    const auto r = std::from_chars(text.data(), text.data() + text.size(), n);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
      throw ConfigError("STEFAN_SIM_THREADS: expected a non-negative integer, got '" + text + "'");
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  ScenarioConfig config;
  try {
    std::optional<Mode> mode;
    if (options.mode_override) mode = parse_mode(*options.mode_override);
    config = load_config(options.config_path, mode);
    if (options.out_dir) config.out_dir = *options.out_dir;
    if (options.format) config.format = parse_format(*options.format);
  } catch (const Error& e) {
    err << "error [" << stefan::to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitConfig;
  }

  SolveReport report;
  try {
    report = execute(config, options.threads);
    require_finite(report);
  } catch (const InvalidParameterError& e) {
    err << "error [" << stefan::to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error [" << stefan::to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitSolver;
  }

  try {
    std::filesystem::create_directories(config.out_dir);
    emit_summary(report, config.out_dir / "summary.json");
    if (report.profile) {
      const char* name = config.format == OutputFormat::Csv ? "profile.csv" : "profile.json";
      emit_profile(report, config.out_dir / name, config.format);
    }
  } catch (const std::exception& e) {
    err << "error [io]: " << e.what() << "\n";
    return kExitConfig;
  }

  if (!options.quiet) {
    out << to_string(config.mode) << ": alpha0=" << format_number(report.summary["alpha0"].get<double>());
    if (report.summary.contains("xi")) out << " xi=" << format_number(report.summary["xi"].get<double>());
    out << " -> " << config.out_dir.string() << "\n";
  }
  return kExitOk;
}

}  // namespace stefan::cli
