#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ardl/timeseries.hpp"

namespace ardl {

/// long: country,year,variable,value rows. wide: year,var1,var2,... for one country.
enum class CsvLayout { Long, Wide };

CsvLayout parse_layout(std::string_view text);

struct LoadReport {
  std::size_t missing_cells = 0;       ///< empty or NA cells
  std::size_t unparseable_cells = 0;   ///< non-numeric text, also stored as missing
  std::map<std::string, std::size_t> missing_by_series;  ///< "COUNTRY/name" -> count
  std::vector<std::string> messages;

  std::size_t total_missing() const { return missing_cells + unparseable_cells; }
};

struct LoadResult {
  std::vector<Dataset> datasets;  ///< sorted by country
  LoadReport report;
};

/**
 * Parse a UTF-8 CSV with '.' decimals; missing is an empty cell or NA.
 *
 * For the wide layout `country` names the resulting single dataset; every
 * series spans the file's full year range. For the long layout a series spans
 * the first to last year listed for it, missing years in between are missing.
 *
 * Throws DataError on an empty file, a missing header column, or a duplicate
 * (country, year, variable) triple.
 */
LoadResult load_csv(const std::filesystem::path& path, CsvLayout layout, const std::string& country = {});

/// Same as load_csv but from an in-memory buffer; `source` is used in messages.
LoadResult parse_csv(const std::string& text, CsvLayout layout, const std::string& country = {},
                     const std::string& source = "<memory>");

/// Values are written with 17 significant digits so a reload is exact.
void write_csv(const std::filesystem::path& path, const std::vector<Dataset>& datasets, CsvLayout layout);
std::string format_csv(const std::vector<Dataset>& datasets, CsvLayout layout);

}  // namespace ardl
