#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fracdyn/csv.hpp"
#include "fracdyn/order_source.hpp"

namespace fracdyn {

/// Invalid or inconsistent scenario configuration (CLI exit status 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Relaxation, Diffusion, Temperature, Coupled, FractorFit, DerivativeCheck };

std::string_view to_string(ScenarioKind kind);

/// forcing(t): zero, a constant, or scale / (rate t + 1).
struct ForcingSpec {
  enum class Kind { Zero, Constant, Reciprocal } kind = Kind::Zero;
  double value = 0.0;
  double scale = 0.0;
  double rate = 0.0;
};

/// Order of a single system.
struct OrderSpec {
  enum class Kind { Constant, LinearTime, Fuzzy, Temperature } kind = Kind::Constant;
  double alpha = kAlphaMax;            // Constant
  double intercept = 0.0;              // LinearTime: clamp(intercept + slope t)
  double slope = 0.0;
  AffineOrderMap map;                  // Fuzzy, Temperature: map of the driver output
  std::vector<double> consequents;     // Fuzzy: two-rule consequents (A1, A2)
  double y0 = 1.0;                     // Fuzzy initial state
  double beta = 1.0;                   // Temperature driver order
  double driver_dt = 0.0;              // 0 means the scenario dt
};

struct RelaxationSpec {
  double lin_coeff = -1.0;
  double x0 = 1.0;
  ForcingSpec forcing;
  OrderSpec order;
};

struct TemperatureSpec {
  double beta = 0.9;
};

struct DiffusionSpec {
  double diffusivity = 0.1;
  double length = 1.0;
  std::size_t nx = 100;
  enum class Initial { Sin, SinPi, Zero } initial = Initial::Sin;
  double left = 0.0;
  double right = 0.0;
  double source = 0.0;  // constant q
  OrderSpec order;
  double probe_x = 0.5;
  bool write_field = false;
};

struct SubsystemSpec {
  double lin_coeff = 0.0;
  double x0 = 0.0;
  ForcingSpec forcing;
  /// Constant order `alpha`, or map(X_source) when `source` is set.
  double alpha = kAlphaMax;
  std::optional<std::size_t> source;
  AffineOrderMap map;
};

struct CoupledSpec {
  std::vector<SubsystemSpec> subsystems;
};

struct SweepFileSpec {
  double temperature = 0.0;
  std::filesystem::path csv;
};

struct SyntheticFractorSpec {
  double magnitude = 1.0;
  double p1 = 0.0;
  double p2 = 0.5;
  double p1_stderr = 0.0;  // spread of the synthetic (T, lambda) data
  double t_lo = 25.0;
  double t_hi = 60.0;
  std::size_t temperatures = 15;
  double omega_min = 1.0;
  double omega_max = 1e4;
  std::size_t points = 50;
  double rel_noise = 0.0;  // relative |Z| noise on each sweep
};

struct FractorFitSpec {
  double tau = 1.0;
  std::vector<SweepFileSpec> sweeps;
  std::optional<SyntheticFractorSpec> synthetic;
};

struct DerivativeCheckSpec {
  std::vector<double> polynomial;  // c_0 + c_1 t + c_2 t^2 + ...
  std::vector<double> alphas;
  double t = 1.0;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Relaxation;
  std::filesystem::path output;  // file prefix, e.g. "out/case1"
  double dt = 0.0;
  double t_end = 0.0;
  std::uint64_t seed = 0;
  std::variant<RelaxationSpec, TemperatureSpec, DiffusionSpec, CoupledSpec, FractorFitSpec,
               DerivativeCheckSpec>
      spec;
  nlohmann::json echo;  // normalized config, written to the manifest
};

/// Validates and converts a JSON document. Throws ConfigError with the
/// offending key path on any schema violation.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Built-in scenarios: "case1", "case2", "fractor-demo".
ScenarioConfig preset(std::string_view name);
std::vector<std::string> preset_names();

struct RunResult {
  std::vector<std::filesystem::path> files;
  double wall_seconds = 0.0;
};

/// Runs the scenario, then writes every CSV and the manifest. No files are
/// written when validation or the computation fails. `out_dir`, if given, is
/// prepended to the configured output prefix.
/// Throws ConfigError for configuration problems and NumericalError for
/// numerical failures.
RunResult run(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir = {});

/// Builds the in-memory tables without touching the file system; keys are
/// the file-name suffixes (e.g. "_relax.csv").
std::vector<std::pair<std::string, CsvTable>> compute_tables(const ScenarioConfig& config);

}  // namespace fracdyn
