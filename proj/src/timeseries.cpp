#include "ardl/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ardl/errors.hpp"

namespace ardl {

TimeSeries::TimeSeries(std::string name, Year start_year, std::vector<std::optional<double>> values)
    : name_(std::move(name)), start_year_(start_year), values_(std::move(values)) {
  if (values_.empty()) {
    throw DataError("series '" + name_ + "' has no observations");
  }
}

TimeSeries TimeSeries::observed(std::string name, Year start_year, const std::vector<double>& values) {
  return TimeSeries(std::move(name), start_year,
                    std::vector<std::optional<double>>(values.begin(), values.end()));
}

std::optional<double> TimeSeries::at(Year year) const {
  if (year < start_year_ || year > end_year()) return std::nullopt;
  return values_[static_cast<std::size_t>(year - start_year_)];
}

std::size_t TimeSeries::missing_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const auto& v) { return !v.has_value(); }));
}

TimeSeries TimeSeries::renamed(std::string name) const {
  return TimeSeries(std::move(name), start_year_, values_);
}

void Dataset::add(TimeSeries s) {
  const std::string key = s.name();
  auto [it, inserted] = series_.emplace(key, std::move(s));
  if (!inserted) {
    throw DataError("duplicate series '" + key + "' for country " + country_);
  }
}

bool Dataset::contains(std::string_view name) const { return series_.find(name) != series_.end(); }

const TimeSeries& Dataset::get(std::string_view name) const {
  auto it = series_.find(name);
  if (it == series_.end()) {
    throw DataError("country " + country_ + " has no series '" + std::string(name) + "'");
  }
  return it->second;
}

Eigen::Index AlignedFrame::column_index(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw DataError("frame has no column '" + std::string(name) + "'");
  }
  return static_cast<Eigen::Index>(it - names.begin());
}

TransformKind parse_transform(std::string_view text) {
  if (text == "identity" || text == "none" || text.empty()) return TransformKind::Identity;
  if (text == "ln" || text == "log") return TransformKind::Ln;
  if (text == "ln_squared" || text == "ln2") return TransformKind::LnSquared;
  if (text == "ln_cubed" || text == "ln3") return TransformKind::LnCubed;
  throw DataError("unknown transform '" + std::string(text) + "'");
}

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Identity: return "identity";
    case TransformKind::Ln: return "ln";
    case TransformKind::LnSquared: return "ln_squared";
    case TransformKind::LnCubed: return "ln_cubed";
  }
  return "identity";
}

std::string_view transform_suffix(TransformKind kind) {
  switch (kind) {
    case TransformKind::Identity: return "";
    case TransformKind::Ln: return "_ln";
    case TransformKind::LnSquared: return "_ln2";
    case TransformKind::LnCubed: return "_ln3";
  }
  return "";
}

TimeSeries transform(const TimeSeries& s, TransformKind kind) {
  if (kind == TransformKind::Identity) return s;
  const int power = kind == TransformKind::Ln ? 1 : kind == TransformKind::LnSquared ? 2 : 3;

  std::vector<std::optional<double>> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& v = s.values()[i];
    if (!v) {
      out.emplace_back();
      continue;
    }
    if (!(*v > 0.0)) {
      std::ostringstream msg;
      msg << "cannot take log of non-positive value " << *v << " in series '" << s.name()
          << "' at year " << s.start_year() + static_cast<Year>(i);
      throw DataError(msg.str());
    }
    const double l = std::log(*v);
    out.emplace_back(power == 1 ? l : power == 2 ? l * l : l * l * l);
  }
  return TimeSeries(s.name() + std::string(transform_suffix(kind)), s.start_year(), std::move(out));
}

TimeSeries difference(const TimeSeries& s, int order) {
  if (order < 1) throw std::invalid_argument("difference order must be positive");
  if (s.size() <= static_cast<std::size_t>(order)) {
    throw DataError("series '" + s.name() + "' too short to difference " + std::to_string(order) +
                    " time(s)");
  }
  std::vector<std::optional<double>> cur = s.values();
  for (int d = 0; d < order; ++d) {
    std::vector<std::optional<double>> next;
    next.reserve(cur.size() - 1);
    for (std::size_t i = 1; i < cur.size(); ++i) {
      if (cur[i] && cur[i - 1]) {
        next.emplace_back(*cur[i] - *cur[i - 1]);
      } else {
        next.emplace_back();
      }
    }
    cur = std::move(next);
  }
  return TimeSeries(s.name(), s.start_year() + order, std::move(cur));
}

TimeSeries lag(const TimeSeries& s, int k) {
  if (k < 0) throw std::invalid_argument("lag must be non-negative");
  if (static_cast<std::size_t>(k) >= s.size()) {
    throw DataError("lag " + std::to_string(k) + " exceeds length of series '" + s.name() + "'");
  }
  std::vector<std::optional<double>> out(s.values().begin(), s.values().end() - k);
  return TimeSeries(s.name(), s.start_year() + k, std::move(out));
}

AlignedFrame align(const Dataset& d, const std::vector<std::string>& names, const AlignOptions& options) {
  if (names.empty()) throw std::invalid_argument("align requires at least one series");
  std::vector<const TimeSeries*> cols;
  cols.reserve(names.size());
  for (const auto& n : names) cols.push_back(&d.get(n));

  Year lo = cols.front()->start_year();
  Year hi = cols.front()->end_year();
  for (const auto* c : cols) {
    lo = std::min(lo, c->start_year());
    hi = std::max(hi, c->end_year());
  }

  // Longest run of all-observed years; ">=" keeps the most recent on ties.
  Year best_start = 0;
  int best_len = 0;
  int run_len = 0;
  int pieces = 0;
  for (Year y = lo; y <= hi; ++y) {
    const bool ok = std::all_of(cols.begin(), cols.end(), [y](const TimeSeries* c) { return c->is_observed(y); });
    if (ok) {
      if (run_len == 0) ++pieces;
      ++run_len;
      if (run_len >= best_len) {
        best_len = run_len;
        best_start = y - run_len + 1;
      }
    } else {
      run_len = 0;
    }
  }

  if (best_len < options.min_window) {
    // Binding series: those with a gap or a late start/early end inside the joint span.
    std::ostringstream msg;
    msg << "country " << d.country() << ": "
        << (best_len == 0 ? "no common observed window" : "insufficient sample") << " (longest common window "
        << best_len << " years, minimum " << options.min_window << "); binding series:";
    Year joint_lo = lo, joint_hi = hi;
    for (const auto* c : cols) {
      joint_lo = std::max(joint_lo, c->start_year());
      joint_hi = std::min(joint_hi, c->end_year());
    }
    bool any = false;
    for (const auto* c : cols) {
      bool binds = c->start_year() == joint_lo || c->end_year() == joint_hi;
      for (Year y = std::max(joint_lo, c->start_year()); y <= std::min(joint_hi, c->end_year()); ++y) {
        if (!c->is_observed(y)) binds = true;
      }
      if (binds && (c->missing_count() > 0 || c->start_year() > lo || c->end_year() < hi)) {
        msg << ' ' << c->name() << " [" << c->start_year() << "-" << c->end_year() << ", "
            << c->missing_count() << " missing]";
        any = true;
      }
    }
    if (!any) msg << " (all series too short)";
    throw DataError(msg.str());
  }

  AlignedFrame frame;
  frame.first_year = best_start;
  frame.last_year = best_start + best_len - 1;
  frame.names = names;
  frame.data.resize(best_len, static_cast<Eigen::Index>(names.size()));
  for (Eigen::Index j = 0; j < frame.data.cols(); ++j) {
    for (int i = 0; i < best_len; ++i) {
      frame.data(i, j) = *cols[static_cast<std::size_t>(j)]->at(best_start + i);
    }
  }
  if (pieces > 1) {
    std::ostringstream note;
    note << "interior missing values split the sample into " << pieces << " pieces; using "
         << frame.first_year << "-" << frame.last_year;
    frame.notes.push_back(note.str());
  }
  return frame;
}

}  // namespace ardl
