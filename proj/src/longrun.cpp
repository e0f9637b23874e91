#include "ardl/longrun.hpp"

#include <cmath>
#include <stdexcept>

#include "ardl/errors.hpp"

namespace ardl {

std::string_view to_string(CurveShape s) {
  switch (s) {
    case CurveShape::InvertedU: return "inverted_u";
    case CurveShape::UShape: return "u_shape";
    case CurveShape::Monotonic: return "monotonic";
    case CurveShape::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

// -num/den with its delta-method standard error.
Coefficient ratio(const std::string& name, const OlsFit& ols, Eigen::Index num, Eigen::Index den) {
  const double a = ols.coefficients(num);
  const double d = ols.coefficients(den);
  const double g_num = -1.0 / d;
  const double g_den = a / (d * d);
  const double var = g_num * g_num * ols.covariance(num, num) + 2.0 * g_num * g_den * ols.covariance(num, den) +
                     g_den * g_den * ols.covariance(den, den);
  Coefficient c;
  c.name = name;
  c.estimate = -a / d;
  c.std_error = std::sqrt(std::max(var, 0.0));
  c.mark = mark_from_estimate(c.estimate, c.std_error, ols.dof());
  return c;
}

}  // namespace

LongRunResult long_run(const ArdlFit& fit, Significance shape_significance) {
  if (fit.level_term_indices.empty()) throw std::invalid_argument("long_run: fit has no level terms");
  const Eigen::Index dep = fit.level_term_indices.front();
  LongRunResult lr;
  lr.delta_dep = fit.ols.coefficients(dep);
  if (!(std::abs(lr.delta_dep) > 1e-12)) throw DataError("no level adjustment; long-run undefined");
  lr.income_order = fit.spec.income_order;
  lr.dof = fit.ols.dof();

  if (fit.intercept_index >= 0) lr.beta0 = ratio("const", fit.ols, fit.intercept_index, dep);
  const auto names = fit.spec.regressor_columns();
  for (std::size_t j = 1; j < fit.level_term_indices.size(); ++j) {
    lr.betas.push_back(ratio(names[j - 1], fit.ols, fit.level_term_indices[j], dep));
  }
  if (lr.income_order == 2) {
    if (lr.betas[1].estimate != 0.0) lr.turning_point = turning_point(lr.betas[0].estimate, lr.betas[1].estimate);
    lr.shape = classify_shape(lr, shape_significance);
  }
  return lr;
}

double turning_point(double beta1, double beta2) {
  if (beta2 == 0.0) throw std::invalid_argument("turning_point: beta2 is zero, no interior extremum");
  return std::exp(-beta1 / (2.0 * beta2));
}

CurveShape classify_shape(const LongRunResult& lr, Significance significance) {
  if (lr.income_order != 2 || lr.betas.size() < 2) {
    throw std::invalid_argument("classify_shape: quadratic income terms required");
  }
  const auto& b1 = lr.betas[0];
  const auto& b2 = lr.betas[1];
  const bool s1 = meets(b1.mark, significance);
  const bool s2 = meets(b2.mark, significance);
  if (s1 && s2) {
    if (b1.estimate > 0.0 && b2.estimate < 0.0) return CurveShape::InvertedU;
    if (b1.estimate < 0.0 && b2.estimate > 0.0) return CurveShape::UShape;
    return CurveShape::Indeterminate;
  }
  if (s1 != s2) return CurveShape::Monotonic;
  return CurveShape::Indeterminate;
}

bool in_sample(double tp, double min_income, double max_income) { return min_income <= tp && tp <= max_income; }

bool in_sample(double tp, const AlignedFrame& frame, const std::string& income_column) {
  Eigen::VectorXd v = frame.column(income_column);
  if (income_column.size() > 3 && income_column.ends_with("_ln")) v = v.array().exp().matrix();
  return in_sample(tp, v.minCoeff(), v.maxCoeff());
}

UecmResult estimate_uecm(const AlignedFrame& frame, const ArdlFit& fit, const LongRunResult& lr,
                         const CriticalValueProvider* provider, Significance significance) {
  const auto& spec = fit.spec;
  const auto regressors = spec.regressor_columns();
  if (lr.betas.size() != regressors.size()) throw std::invalid_argument("estimate_uecm: long-run result does not match fit");

  const Eigen::Index T = frame.rows();
  Eigen::VectorXd ec = frame.column(spec.dependent_column());
  if (lr.beta0) ec.array() -= lr.beta0->estimate;
  for (std::size_t j = 0; j < regressors.size(); ++j) ec -= lr.betas[j].estimate * frame.column(regressors[j]);

  const auto dm = build_design(frame, spec, fit.lags, fit.sample_lag);
  const Eigen::Index rows = dm.X.rows();
  const Eigen::Index short_cols = dm.X.cols() - static_cast<Eigen::Index>(dm.level_term_indices.size());
  // Level columns are the trailing block of the design.
  Eigen::MatrixXd X(rows, short_cols + 1);
  X.leftCols(short_cols) = dm.X.leftCols(short_cols);
  UecmResult u;
  u.ec_series = ec.segment(dm.first_row - 1, rows);
  if (dm.first_row - 1 + rows > T) throw std::logic_error("estimate_uecm: sample exceeds frame");
  X.col(short_cols) = u.ec_series;
  u.first_year = dm.first_year;

  const double mean = u.ec_series.mean();
  if (!((u.ec_series.array() - mean).square().sum() > 1e-24 * std::max(1.0, mean * mean) * rows)) {
    throw DataError("error-correction term has zero variance");
  }

  std::vector<std::string> names(dm.names.begin(), dm.names.begin() + short_cols);
  names.push_back("EC.L1");
  u.ols = ols(X, dm.y, names);
  const auto marks = t_marks(u.ols);
  for (Eigen::Index j = 0; j < short_cols; ++j) {
    u.short_run.push_back({names[static_cast<std::size_t>(j)], u.ols.coefficients(j), u.ols.std_errors(j),
                           marks[static_cast<std::size_t>(j)]});
  }
  u.phi = u.ols.coefficients(short_cols);
  u.phi_mark = marks[static_cast<std::size_t>(short_cols)];

  const Eigen::Index dep = fit.level_term_indices.front();
  u.phi_t_ardl = fit.ols.t_ratio(dep);
  if (provider) {
    const int k = static_cast<int>(fit.level_term_indices.size()) - 1;
    u.phi_t_critical = provider->ec_t_critical(k, significance, fit.ols.n_obs);
    if (u.phi_t_critical) u.phi_robust_significant = u.phi_t_ardl < *u.phi_t_critical;
  }
  if (u.phi >= 0.0 && meets(u.phi_mark, significance)) {
    u.warnings.push_back("non-negative significant speed of adjustment (phi = " + std::to_string(u.phi) + ")");
  }
  return u;
}

}  // namespace ardl
