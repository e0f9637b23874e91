#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ardl {

using Year = int;

/**
 * @brief Named annual series indexed implicitly by consecutive years.
 *
 * A missing observation is an empty optional. Instances are immutable; every
 * operation below returns a new series.
 */
class TimeSeries {
 public:
  TimeSeries(std::string name, Year start_year, std::vector<std::optional<double>> values);

  /// Convenience constructor for fully observed data.
  static TimeSeries observed(std::string name, Year start_year, const std::vector<double>& values);

  const std::string& name() const noexcept { return name_; }
  Year start_year() const noexcept { return start_year_; }
  Year end_year() const noexcept { return start_year_ + static_cast<Year>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<std::optional<double>>& values() const noexcept { return values_; }

  /// Value at a calendar year; empty when missing or outside the span.
  std::optional<double> at(Year year) const;
  bool is_observed(Year year) const { return at(year).has_value(); }
  std::size_t missing_count() const;

  TimeSeries renamed(std::string name) const;

  bool operator==(const TimeSeries&) const = default;

 private:
  std::string name_;
  Year start_year_;
  std::vector<std::optional<double>> values_;
};

/// All series for one country, keyed by (unique) name.
class Dataset {
 public:
  using SeriesMap = std::map<std::string, TimeSeries, std::less<>>;

  explicit Dataset(std::string country) : country_(std::move(country)) {}

  const std::string& country() const noexcept { return country_; }
  const SeriesMap& series() const noexcept { return series_; }

  /// Throws DataError on a duplicate name.
  void add(TimeSeries s);
  bool contains(std::string_view name) const;
  const TimeSeries& get(std::string_view name) const;

  bool operator==(const Dataset&) const = default;

 private:
  std::string country_;
  SeriesMap series_;
};

/// Fully observed block of columns over a contiguous year window.
struct AlignedFrame {
  Year first_year = 0;
  Year last_year = 0;
  std::vector<std::string> names;
  Eigen::MatrixXd data;             // rows = years, columns = names
  std::vector<std::string> notes;   // e.g. sample splits caused by interior gaps

  Eigen::Index rows() const noexcept { return data.rows(); }
  Eigen::Index column_index(std::string_view name) const;  // throws DataError
  Eigen::VectorXd column(std::string_view name) const { return data.col(column_index(name)); }
};

enum class TransformKind { Identity, Ln, LnSquared, LnCubed };

TransformKind parse_transform(std::string_view text);
std::string_view to_string(TransformKind kind);
/// Suffix appended to a series name by transform(): "", "_ln", "_ln2", "_ln3".
std::string_view transform_suffix(TransformKind kind);

/// Element-wise log family. Missing stays missing; non-positive input under a
/// log transform throws DataError naming the series and year.
TimeSeries transform(const TimeSeries& s, TransformKind kind);

/// order-th difference; output starts `order` years later. Missing propagates.
TimeSeries difference(const TimeSeries& s, int order = 1);

/// Value at year t is s at year t-k; the first k years drop out.
TimeSeries lag(const TimeSeries& s, int k);

struct AlignOptions {
  int min_window = 20;
};

/**
 * @brief Longest contiguous window over which every requested series is observed.
 *
 * Interior gaps split the sample and the longest piece wins; among pieces of
 * equal length the most recent is taken. Throws DataError when no window
 * reaches `min_window` years, naming the series that bind.
 */
AlignedFrame align(const Dataset& d, const std::vector<std::string>& names,
                   const AlignOptions& options = {});

}  // namespace ardl
