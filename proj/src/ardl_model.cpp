#include "ardl/ardl_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ardl/errors.hpp"

namespace ardl {

void ModelSpec::validate() const {
  if (income_order < 1 || income_order > 3) {
    throw std::invalid_argument("income_order must be 1, 2 or 3 (got " + std::to_string(income_order) + ")");
  }
  if (dependent.empty() || income.empty()) throw std::invalid_argument("model needs dependent and income names");
  if (dependent == income) throw std::invalid_argument("dependent and income must differ");
  std::set<std::string> seen = {dependent, income};
  for (const auto& c : controls) {
    if (!seen.insert(c.name).second) {
      throw std::invalid_argument("control '" + c.name + "' duplicates another model variable");
    }
  }
}

std::string ModelSpec::dependent_column() const { return dependent + "_ln"; }

std::vector<std::string> ModelSpec::income_columns() const {
  static const TransformKind kinds[] = {TransformKind::Ln, TransformKind::LnSquared, TransformKind::LnCubed};
  std::vector<std::string> out;
  for (int i = 0; i < income_order; ++i) out.push_back(income + std::string(transform_suffix(kinds[i])));
  return out;
}

std::vector<std::string> ModelSpec::control_columns() const {
  std::vector<std::string> out;
  for (const auto& c : controls) out.push_back(c.name + std::string(transform_suffix(c.transform)));
  return out;
}

std::vector<std::string> ModelSpec::regressor_columns() const {
  auto out = income_columns();
  auto ctrl = control_columns();
  out.insert(out.end(), ctrl.begin(), ctrl.end());
  return out;
}

std::vector<std::string> ModelSpec::level_columns() const {
  std::vector<std::string> out = {dependent_column()};
  auto reg = regressor_columns();
  out.insert(out.end(), reg.begin(), reg.end());
  return out;
}

std::vector<std::string> ModelSpec::raw_series() const {
  std::vector<std::string> out = {dependent, income};
  for (const auto& c : controls) out.push_back(c.name);
  return out;
}

int LagOrder::max() const {
  int m = dependent;
  for (int r : regressors) m = std::max(m, r);
  return m;
}

int LagOrder::total() const { return std::accumulate(regressors.begin(), regressors.end(), dependent); }

std::string LagOrder::to_string() const {
  std::ostringstream out;
  out << '(' << dependent;
  for (int r : regressors) out << ',' << r;
  out << ')';
  return out.str();
}

void LagOrder::validate(const ModelSpec& spec, int max_lag) const {
  if (static_cast<int>(regressors.size()) != spec.group_count()) {
    throw std::invalid_argument("lag order " + to_string() + " does not match " +
                                std::to_string(spec.group_count()) + " regressor groups");
  }
  if (dependent < 1) throw std::invalid_argument("dependent lag must be at least 1");
  for (int r : regressors) {
    if (r < 0) throw std::invalid_argument("regressor lags must be non-negative");
  }
  if (max_lag >= 0 && max() > std::max(max_lag, 1)) {
    throw std::invalid_argument("lag order " + to_string() + " exceeds max_lag " + std::to_string(max_lag));
  }
}

AlignedFrame prepare_frame(const Dataset& d, const ModelSpec& spec, const AlignOptions& options) {
  spec.validate();
  Dataset derived(d.country());
  derived.add(transform(d.get(spec.dependent), TransformKind::Ln));
  static const TransformKind kinds[] = {TransformKind::Ln, TransformKind::LnSquared, TransformKind::LnCubed};
  for (int i = 0; i < spec.income_order; ++i) derived.add(transform(d.get(spec.income), kinds[i]));
  for (const auto& c : spec.controls) derived.add(transform(d.get(c.name), c.transform));
  return align(derived, spec.level_columns(), options);
}

DesignMatrix build_design(const AlignedFrame& frame, const ModelSpec& spec, const LagOrder& lags, int sample_lag) {
  spec.validate();
  lags.validate(spec, -1);
  const auto level_names = spec.level_columns();
  const auto regressor_names = spec.regressor_columns();

  std::vector<Eigen::Index> level_cols;
  for (const auto& n : level_names) level_cols.push_back(frame.column_index(n));

  const int T = static_cast<int>(frame.rows());
  const int start = std::max(lags.max(), sample_lag) + 1;
  const int rows = T - start;
  int cols = (spec.include_intercept ? 1 : 0) + lags.dependent + static_cast<int>(level_names.size());
  for (int q : lags.regressors) cols += q + 1;
  if (rows <= cols) {
    std::ostringstream msg;
    msg << "insufficient rows for ARDL" << lags.to_string() << ": " << rows << " usable observations after "
        << start << " lost to lags, need more than " << cols << " (frame has " << T << ")";
    throw DataError(msg.str());
  }

  DesignMatrix dm;
  dm.y.resize(rows);
  dm.X.resize(rows, cols);
  dm.first_row = start;
  dm.first_year = frame.first_year + start;
  dm.last_year = frame.last_year;

  auto level = [&](std::size_t g, int t) { return frame.data(t, level_cols[g]); };
  auto diff = [&](std::size_t g, int t) { return level(g, t) - level(g, t - 1); };

  for (int i = 0; i < rows; ++i) dm.y(i) = diff(0, start + i);

  int c = 0;
  if (spec.include_intercept) {
    dm.X.col(c).setOnes();
    dm.names.push_back("const");
    dm.intercept_index = c++;
  }
  for (int lag = 1; lag <= lags.dependent; ++lag, ++c) {
    for (int i = 0; i < rows; ++i) dm.X(i, c) = diff(0, start + i - lag);
    dm.names.push_back("d." + level_names[0] + ".L" + std::to_string(lag));
  }
  for (std::size_t g = 0; g < regressor_names.size(); ++g) {
    for (int lag = 0; lag <= lags.regressors[g]; ++lag, ++c) {
      for (int i = 0; i < rows; ++i) dm.X(i, c) = diff(g + 1, start + i - lag);
      dm.names.push_back("d." + regressor_names[g] + ".L" + std::to_string(lag));
    }
  }
  for (std::size_t g = 0; g < level_names.size(); ++g, ++c) {
    for (int i = 0; i < rows; ++i) dm.X(i, c) = level(g, start + i - 1);
    dm.names.push_back(level_names[g] + ".L1");
    dm.level_term_indices.push_back(c);
  }
  return dm;
}

ArdlFit fit_ardl(const AlignedFrame& frame, const ModelSpec& spec, const LagOrder& lags, int sample_lag) {
  auto dm = build_design(frame, spec, lags, sample_lag);
  ArdlFit fit;
  fit.spec = spec;
  fit.lags = lags;
  fit.ols = ols(dm.X, dm.y, dm.names);
  fit.level_term_indices = std::move(dm.level_term_indices);
  fit.intercept_index = dm.intercept_index;
  fit.first_year = dm.first_year;
  fit.last_year = dm.last_year;
  fit.first_row = dm.first_row;
  fit.sample_lag = sample_lag;
  return fit;
}

}  // namespace ardl
