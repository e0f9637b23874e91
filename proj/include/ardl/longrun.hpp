#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ardl/ardl_model.hpp"
#include "ardl/bounds.hpp"
#include "ardl/regression.hpp"

namespace ardl {

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  SignificanceMark mark;
};

enum class CurveShape { InvertedU, UShape, Monotonic, Indeterminate };

std::string_view to_string(CurveShape s);

struct LongRunResult {
  std::optional<Coefficient> beta0;  ///< long-run intercept, absent without an intercept
  std::vector<Coefficient> betas;    ///< income terms then controls, named by level column
  double delta_dep = 0.0;            ///< coefficient on the lagged dependent level
  int income_order = 2;
  int dof = 0;
  std::optional<double> turning_point;  ///< income_order 2 and beta2 != 0 only
  CurveShape shape = CurveShape::Indeterminate;
};

/**
 * @brief Level relationship implied by the ARDL fit.
 *
 * beta_j = -delta_j / delta_dep and beta0 = -intercept / delta_dep, with
 * delta-method standard errors from the OLS covariance and Student-t marks on
 * the fit's residual degrees of freedom. Shape is classified at 5%.
 * Throws DataError when |delta_dep| <= 1e-12.
 */
LongRunResult long_run(const ArdlFit& fit, Significance shape_significance = Significance::Pct5);

/// exp(-beta1 / (2 beta2)). Throws std::invalid_argument when beta2 == 0.
double turning_point(double beta1, double beta2);

/**
 * Sign and significance pattern of the two income terms: InvertedU for
 * (+, -) both significant, UShape for (-, +) both significant, Monotonic when
 * exactly one is significant, Indeterminate otherwise.
 * Throws std::invalid_argument unless income_order == 2.
 */
CurveShape classify_shape(const LongRunResult& lr, Significance significance = Significance::Pct5);

/// Inclusive range check.
bool in_sample(double tp, double min_income, double max_income);

/// Range of income over the frame; a "_ln" column is exponentiated back to levels.
bool in_sample(double tp, const AlignedFrame& frame, const std::string& income_column);

struct UecmResult {
  double phi = 0.0;
  /// Student-t mark from the second-step regression. The generated EC regressor
  /// makes this optimistic under no cointegration; see phi_robust_significant.
  SignificanceMark phi_mark;
  std::vector<Coefficient> short_run;  ///< intercept and differenced terms
  Eigen::VectorXd ec_series;           ///< EC_{t-1} regressor, one entry per used row
  Year first_year = 0;                 ///< year of the first regression row
  OlsFit ols;

  /// t-ratio on the lagged dependent level in the ARDL fit.
  double phi_t_ardl = 0.0;
  /// Simulated lower-tail critical value for that t-ratio with I(1) regressors.
  std::optional<double> phi_t_critical;
  /// phi_t_ardl < phi_t_critical; empty when no critical value is available.
  std::optional<bool> phi_robust_significant;

  std::vector<std::string> warnings;
};

/**
 * @brief Two-step error-correction regression.
 *
 * EC_t = ln e_t - (beta0 + sum_j beta_j x_jt) over the frame; the first
 * difference of the dependent is regressed on the ARDL's short-run terms (same
 * lag orders, same sample) plus EC_{t-1}. A non-negative phi that is
 * significant at `significance` adds a warning. Throws DataError when EC has
 * zero variance over the sample.
 */
UecmResult estimate_uecm(const AlignedFrame& frame, const ArdlFit& fit, const LongRunResult& lr,
                         const CriticalValueProvider* provider = nullptr,
                         Significance significance = Significance::Pct5);

}  // namespace ardl
