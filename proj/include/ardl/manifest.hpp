#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ardl/csv_io.hpp"
#include "ardl/timeseries.hpp"

namespace ardl {

/// Canonical variable names: e, y, x1 ... x12, x13_electricity, x14_gasoline, x15_fuel.
const std::vector<std::string>& canonical_variables();

struct CountryEntry {
  std::filesystem::path file;                           ///< wide layout only
  std::map<std::string, std::set<std::string>> exclude; ///< model id -> controls to drop
};

/**
 * Dataset manifest (JSON):
 *
 *     {
 *       "layout": "wide",                  // or "long"
 *       "file": "panel.csv",               // long layout: one file for all countries
 *       "countries": { "MEX": {"file": "MEX.csv"},
 *                      "CUBA": {"file": "CUBA.csv", "exclude": {"M3": ["x4"]}} },
 *       "aliases": { "co2_pc": "e", "gdp_pc": "y" }
 *     }
 *
 * Relative paths resolve against the manifest's directory.
 */
struct Manifest {
  std::filesystem::path base_dir;
  CsvLayout layout = CsvLayout::Wide;
  std::filesystem::path long_file;
  std::map<std::string, CountryEntry> countries;
  std::map<std::string, std::string> aliases;  ///< file column -> canonical name

  static Manifest load(const std::filesystem::path& path);
  static Manifest parse(const std::string& json_text, const std::filesystem::path& base_dir = {});

  /// Controls excluded for a country under a model id (empty if none).
  std::set<std::string> excluded(const std::string& country, const std::string& model_id) const;
};

/// Loads country datasets lazily and applies the manifest's aliases.
class DataStore {
 public:
  explicit DataStore(Manifest manifest) : manifest_(std::move(manifest)) {}

  const Manifest& manifest() const noexcept { return manifest_; }

  /// Throws DataError when the country is unknown or its file is unreadable.
  Dataset dataset(const std::string& country, LoadReport* report = nullptr) const;

 private:
  Dataset apply_aliases(const Dataset& raw) const;

  Manifest manifest_;
  mutable std::optional<LoadResult> long_cache_;
};

}  // namespace ardl
