#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stefan/errors.hpp"
#include "stefan/fixedpoint.hpp"
#include "stefan/oracle.hpp"
#include "stefan/thermal.hpp"

namespace stefan::cli {

enum class Mode { Vapor, SolveFlux, SolveConvective, ClosedForm, Verify };
enum class OutputFormat { Csv, Json };

Mode parse_mode(const std::string& text);
const char* to_string(Mode mode) noexcept;
OutputFormat parse_format(const std::string& text);

/// Configuration or I/O problem; maps to exit status 1.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Config, what) {}
};

struct ScenarioConfig {
  Mode mode = Mode::SolveFlux;
  /// Set when the config carries the dimensional block.
  std::optional<PhysicalParams> physical;
  /// Set when the config gives the reduced constants directly.
  std::optional<DimensionlessProblem> dimensionless;
  /// Optional override of the boiling-front coefficient for physical configs.
  std::optional<double> alpha0;
  /// Direct vapor quadratic coefficients.
  std::optional<std::pair<double, double>> vapor_DE;
  CoefficientModel model = CoefficientModel::constant();
  /// Boundary kind for ClosedForm and Verify modes.
  BoundaryKind boundary = BoundaryKind::HeatFlux;
  /// Temperatures used to map u to θ when only reduced constants are given.
  double theta_m = 1.0;
  double theta_star = 0.0;
  FixedPointConfig solver;
  ShootingConfig oracle;
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::Csv;
};

/// Parses and validates a JSON config. ConfigError names the offending field
/// (or the line and column for syntax errors). mode_override replaces the
/// config's mode before the mode-specific checks run.
ScenarioConfig parse_config(const std::string& text, std::optional<Mode> mode_override = std::nullopt);
ScenarioConfig load_config(const std::filesystem::path& path, std::optional<Mode> mode_override = std::nullopt);

/// Reduced problem for the given boundary kind, solving for α₀ when needed.
DimensionlessProblem build_problem(const ScenarioConfig& config, BoundaryKind bc);

struct ProfileTable {
  std::vector<double> eta;
  std::vector<double> u2;
  std::vector<double> theta;
};

struct SolveReport {
  nlohmann::ordered_json summary;
  std::optional<ProfileTable> profile;
};

/// Executes one scenario. Solver failures propagate as stefan::Error.
/// threads caps the workers used by Verify mode (1 runs everything inline).
SolveReport execute(const ScenarioConfig& config, unsigned threads = 1);

/// Throws NonConvergenceError naming the first NaN/Inf in the report.
void require_finite(const SolveReport& report);

void emit_summary(const SolveReport& report, const std::filesystem::path& path);
void emit_profile(const SolveReport& report, const std::filesystem::path& path, OutputFormat format);

/// Decimal text with 17 significant digits, independent of the locale.
std::string format_number(double value);

struct RunOptions {
  std::filesystem::path config_path;
  std::optional<std::string> mode_override;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::string> format;
  bool quiet = false;
  unsigned threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolver = 2;

/// Full driver: load, execute, emit. Returns the exit status and writes
/// diagnostics to err.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

/// STEFAN_SIM_THREADS: 0 or unset means hardware concurrency.
unsigned threads_from_env();

}  // namespace stefan::cli
