#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ardl/ardl_model.hpp"
#include "ardl/bounds.hpp"
#include "ardl/longrun.hpp"
#include "ardl/manifest.hpp"

namespace ardl {

/// Model ids M1..M6 in order.
const std::vector<std::string>& preset_ids();

/**
 * Regressor set for a model id. All presets use a quadratic income term.
 * M2 (output structure shares) enters its controls in logs; the others enter
 * as given. Throws ConfigError for an unknown id.
 */
ModelSpec preset(std::string_view model_id);

/// Critical-value table variant used by a model id ("M5" has its own k = 5 row).
std::string_view bounds_variant(std::string_view model_id);

/// The 21 country codes used by default.
const std::vector<std::string>& default_countries();

enum class OutputFormat { Csv, Json, Markdown };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat f);

/// Environment variable that overrides RunConfig::output_dir.
inline constexpr const char* kOutputDirEnv = "ARDL_OUTPUT_DIR";

struct RunConfig {
  std::filesystem::path manifest;
  std::vector<std::string> countries = default_countries();
  std::vector<std::string> models = {"M1"};
  int max_lag = 4;
  Significance significance = Significance::Pct5;
  std::filesystem::path output_dir = "ardl_out";
  std::set<OutputFormat> formats = {OutputFormat::Csv, OutputFormat::Json, OutputFormat::Markdown};
  int min_window = 20;
  long long grid_budget = 1'000'000;
  /// Simulate bounds and EC t critical values the embedded table lacks.
  bool simulate_missing_bounds = true;
  int mc_replications = 5000;
  int mc_bootstrap = 100;
  std::uint64_t seed = 20051;
  int threads = 0;  ///< 0 keeps the OpenMP default

  /**
   * JSON keys match the field names; `significance` is "1%", "5%" or "10%",
   * `formats` a list of "csv", "json", "md". Relative paths resolve against
   * `base_dir`. Throws ConfigError on unknown keys or bad values.
   */
  static RunConfig parse(const std::string& json_text, const std::filesystem::path& base_dir = {});
  /// parse() on a file, then applies the ARDL_OUTPUT_DIR override.
  static RunConfig load(const std::filesystem::path& path);

  /// Non-empty countries and models, known model ids, max_lag in 1..8.
  void validate() const;
};

/// Replaces output_dir with $ARDL_OUTPUT_DIR when that is set and non-empty.
void apply_env_overrides(RunConfig& cfg);

/// One (country, model) cell. Estimate cells stay empty unless cointegrated.
struct CountryRow {
  std::string country;
  std::string model;
  ModelSpec spec;
  std::vector<std::string> controls_dropped;

  std::optional<LagSelection> selection;
  std::optional<ArdlFit> fit;
  std::optional<BoundsTestResult> bounds;

  std::optional<LongRunResult> long_run;
  std::optional<double> turning_point;
  std::optional<bool> turning_point_in_sample;
  std::optional<UecmResult> uecm;

  std::vector<std::string> warnings;

  bool succeeded() const { return bounds.has_value(); }
  bool cointegrated() const { return bounds && bounds->decision == Decision::Cointegrated; }
};

struct BatchResult {
  std::vector<CountryRow> rows;  ///< model-major, in config order

  int succeeded() const;
  std::vector<const CountryRow*> rows_for(const std::string& model) const;
};

/**
 * @brief Per-cell pipeline: align, select lags, fit, bounds test and, for a
 * cointegrated cell, long run, turning point and UECM.
 *
 * Data-level failures are recorded as row warnings; the function never throws.
 */
CountryRow run_cell(const Dataset& data, const std::string& model_id, const RunConfig& cfg,
                    const CriticalValueProvider& provider, const std::set<std::string>& excluded = {});

/**
 * Full batch over countries x models. Datasets load serially; cells then run
 * in parallel (OpenMP) and land in fixed slots, so the result does not depend
 * on the worker count. Throws ConfigError for config-level failures.
 */
BatchResult run_batch(const RunConfig& cfg);

/// Single-threaded reference for run_batch.
BatchResult run_batch_serial(const RunConfig& cfg);

std::string render_csv(const BatchResult& result, const std::string& model);
std::string render_markdown(const BatchResult& result, const std::string& model);
/// Full nested results including covariance matrices.
std::string render_json(const BatchResult& result, const RunConfig& cfg);

/// Writes the configured formats into cfg.output_dir; returns the paths
/// written. Throws std::runtime_error when the directory is not writable.
std::vector<std::filesystem::path> render(const BatchResult& result, const RunConfig& cfg);

/// Fixed-point text used in tables, e.g. format_fixed(9235.4123, 2) == "9235.41".
std::string format_fixed(double v, int decimals);

}  // namespace ardl
