#include "ardl/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "ardl/errors.hpp"

namespace ardl {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '"')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '"')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

enum class CellKind { Value, Missing, Unparseable };

CellKind parse_cell(const std::string& cell, double& value) {
  if (cell.empty() || cell == "NA" || cell == "na" || cell == "NaN") return CellKind::Missing;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return CellKind::Unparseable;
  return CellKind::Value;
}

Year parse_year(const std::string& cell, const std::string& source, std::size_t line_no) {
  int y = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), y);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw DataError(source + ":" + std::to_string(line_no) + ": bad year '" + cell + "'");
  }
  return y;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// (country, variable) -> year -> value
using Cells = std::map<std::pair<std::string, std::string>, std::map<Year, std::optional<double>>>;

LoadResult build_datasets(const Cells& cells, const std::map<std::string, std::pair<Year, Year>>& spans_override,
                          LoadReport report) {
  std::map<std::string, Dataset> by_country;
  for (const auto& [key, years] : cells) {
    const auto& [country, variable] = key;
    Year lo = years.begin()->first;
    Year hi = years.rbegin()->first;
    if (auto it = spans_override.find(country); it != spans_override.end()) {
      lo = it->second.first;
      hi = it->second.second;
    }
    std::vector<std::optional<double>> values;
    values.reserve(static_cast<std::size_t>(hi - lo + 1));
    std::size_t missing = 0;
    for (Year y = lo; y <= hi; ++y) {
      auto it = years.find(y);
      if (it == years.end() || !it->second) {
        values.emplace_back();
        ++missing;
      } else {
        values.push_back(it->second);
      }
    }
    if (missing > 0) report.missing_by_series[country + "/" + variable] = missing;
    auto [it, _] = by_country.try_emplace(country, country);
    it->second.add(TimeSeries(variable, lo, std::move(values)));
  }
  LoadResult result;
  result.report = std::move(report);
  for (auto& [_, ds] : by_country) result.datasets.push_back(std::move(ds));
  return result;
}

}  // namespace

CsvLayout parse_layout(std::string_view text) {
  if (text == "long") return CsvLayout::Long;
  if (text == "wide") return CsvLayout::Wide;
  throw DataError("unknown CSV layout '" + std::string(text) + "' (expected long or wide)");
}

LoadResult parse_csv(const std::string& text, CsvLayout layout, const std::string& country,
                     const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_line(line);
      break;
    }
  }
  if (header.empty()) throw DataError(source + ": empty file");
  if (!header.empty() && header[0].size() >= 3 && header[0].compare(0, 3, "\xEF\xBB\xBF") == 0) {
    header[0] = header[0].substr(3);
  }

  LoadReport report;
  Cells cells;
  std::map<std::string, std::pair<Year, Year>> spans;
  std::size_t data_rows = 0;

  auto record = [&](const std::string& ctry, const std::string& var, Year year, const std::string& cell) {
    double v = 0.0;
    std::optional<double> value;
    switch (parse_cell(cell, v)) {
      case CellKind::Value: value = v; break;
      case CellKind::Missing: ++report.missing_cells; break;
      case CellKind::Unparseable:
        ++report.unparseable_cells;
        report.messages.push_back(source + ":" + std::to_string(line_no) + ": unparseable value '" + cell +
                                  "' for " + var + " treated as missing");
        break;
    }
    auto& years = cells[{ctry, var}];
    if (!years.emplace(year, value).second) {
      throw DataError(source + ":" + std::to_string(line_no) + ": duplicate entry for (" + ctry + ", " +
                      std::to_string(year) + ", " + var + ")");
    }
  };

  if (layout == CsvLayout::Long) {
    auto col = [&](std::string_view name) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw DataError(source + ": long layout requires column '" + std::string(name) + "'");
      return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_country = col("country"), c_year = col("year"), c_var = col("variable"),
                      c_value = col("value");
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      auto fields = split_line(line);
      fields.resize(std::max(fields.size(), header.size()));
      ++data_rows;
      record(fields[c_country], fields[c_var], parse_year(fields[c_year], source, line_no), fields[c_value]);
    }
  } else {
    if (header[0] != "year") throw DataError(source + ": wide layout requires 'year' as first column");
    if (country.empty()) throw DataError(source + ": wide layout needs a country name");
    std::set<std::string> seen;
    for (std::size_t j = 1; j < header.size(); ++j) {
      if (!seen.insert(header[j]).second) throw DataError(source + ": duplicate column '" + header[j] + "'");
    }
    Year lo = 0, hi = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      auto fields = split_line(line);
      fields.resize(std::max(fields.size(), header.size()));
      const Year year = parse_year(fields[0], source, line_no);
      lo = data_rows == 0 ? year : std::min(lo, year);
      hi = data_rows == 0 ? year : std::max(hi, year);
      ++data_rows;
      for (std::size_t j = 1; j < header.size(); ++j) record(country, header[j], year, fields[j]);
    }
    spans[country] = {lo, hi};
  }
  if (data_rows == 0) throw DataError(source + ": no data rows");

  auto result = build_datasets(cells, spans, std::move(report));
  // Years absent from a long file count as missing too.
  std::size_t counted = result.report.missing_cells + result.report.unparseable_cells;
  std::size_t actual = 0;
  for (const auto& [_, n] : result.report.missing_by_series) actual += n;
  if (actual > counted) result.report.missing_cells += actual - counted;
  return result;
}

LoadResult load_csv(const std::filesystem::path& path, CsvLayout layout, const std::string& country) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), layout, country, path.string());
}

std::string format_csv(const std::vector<Dataset>& datasets, CsvLayout layout) {
  std::ostringstream out;
  if (layout == CsvLayout::Long) {
    out << "country,year,variable,value\n";
    for (const auto& ds : datasets) {
      for (const auto& [name, s] : ds.series()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          const auto& v = s.values()[i];
          out << ds.country() << ',' << s.start_year() + static_cast<Year>(i) << ',' << name << ','
              << (v ? format_value(*v) : "NA") << '\n';
        }
      }
    }
    return out.str();
  }
  if (datasets.size() != 1) throw DataError("wide layout holds exactly one country");
  const auto& ds = datasets.front();
  if (ds.series().empty()) throw DataError("dataset " + ds.country() + " has no series");
  Year lo = ds.series().begin()->second.start_year();
  Year hi = ds.series().begin()->second.end_year();
  out << "year";
  for (const auto& [name, s] : ds.series()) {
    lo = std::min(lo, s.start_year());
    hi = std::max(hi, s.end_year());
    out << ',' << name;
  }
  out << '\n';
  for (Year y = lo; y <= hi; ++y) {
    out << y;
    for (const auto& [_, s] : ds.series()) {
      auto v = s.at(y);
      out << ',' << (v ? format_value(*v) : "NA");
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<Dataset>& datasets, CsvLayout layout) {
  const std::string text = format_csv(datasets, layout);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

}  // namespace ardl
