#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ardl/regression.hpp"
#include "ardl/timeseries.hpp"

namespace ardl {

struct ControlTerm {
  std::string name;
  TransformKind transform = TransformKind::Identity;

  bool operator==(const ControlTerm&) const = default;
};

/**
 * @brief Regressor set of one ARDL equation.
 *
 * The dependent series enters in logs; income enters as ln y, (ln y)^2 and,
 * for income_order 3, (ln y)^3. income_order 1 (ln y only) is accepted for
 * plain two-variable ARDL work but the turning-point tools need order 2.
 */
struct ModelSpec {
  std::string dependent = "e";
  std::string income = "y";
  int income_order = 2;
  std::vector<ControlTerm> controls;
  bool include_intercept = true;

  /// Throws std::invalid_argument on a bad order or duplicated/overlapping names.
  void validate() const;

  std::string dependent_column() const;
  std::vector<std::string> income_columns() const;
  std::vector<std::string> control_columns() const;
  /// Short-run regressor groups in design order: income terms then controls.
  std::vector<std::string> regressor_columns() const;
  /// Lagged-level block order: dependent, income terms, controls.
  std::vector<std::string> level_columns() const;
  /// Raw series names the model needs from a dataset.
  std::vector<std::string> raw_series() const;

  int group_count() const { return income_order + static_cast<int>(controls.size()); }
  /// Level regressors excluding the dependent's own level.
  int bounds_k() const { return group_count(); }
};

/// Lag orders (m; n, r, [s], controls...). m >= 1, the rest >= 0.
struct LagOrder {
  int dependent = 1;
  std::vector<int> regressors;

  int max() const;
  int total() const;
  /// Conventional tuple "(m,n,r,...)".
  std::string to_string() const;
  void validate(const ModelSpec& spec, int max_lag) const;

  auto operator<=>(const LagOrder&) const = default;
};

/// Applies the model's transforms and aligns the result into one frame.
AlignedFrame prepare_frame(const Dataset& d, const ModelSpec& spec, const AlignOptions& options = {});

struct DesignMatrix {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> names;
  std::vector<int> level_term_indices;
  int intercept_index = -1;
  Year first_year = 0;  ///< year of the first usable row
  Year last_year = 0;
  int first_row = 0;    ///< frame row of the first usable observation
};

/**
 * @brief ARDL regression of the first-differenced dependent.
 *
 * Column order: intercept; dependent differences lags 1..m; each regressor's
 * differences lags 0..q; the lagged levels (dependent, income terms,
 * controls) at t-1. The first usable row is frame row
 * max(lags.max(), sample_lag) + 1 so that searches can share one sample.
 */
DesignMatrix build_design(const AlignedFrame& frame, const ModelSpec& spec, const LagOrder& lags,
                          int sample_lag = 0);

struct ArdlFit {
  ModelSpec spec;
  LagOrder lags;
  OlsFit ols;
  std::vector<int> level_term_indices;
  int intercept_index = -1;
  Year first_year = 0;
  Year last_year = 0;
  int first_row = 0;
  int sample_lag = 0;
};

ArdlFit fit_ardl(const AlignedFrame& frame, const ModelSpec& spec, const LagOrder& lags, int sample_lag = 0);

struct LagSearchOptions {
  int max_lag = 4;
  /// Exhaustive search above this many candidates falls back to a staged search.
  long long grid_budget = 1'000'000;
};

struct LagSelection {
  LagOrder order;
  double sic = 0.0;
  int n_obs = 0;
  long long evaluated = 0;   ///< candidates with a valid fit
  long long skipped = 0;     ///< rank-deficient or too few observations
  bool staged = false;
  std::vector<std::string> warnings;
};

/// Number of candidates in the exhaustive grid.
long long lag_grid_size(const ModelSpec& spec, int max_lag);

/// Candidate `index` of the grid in mixed-radix order (dependent lag slowest).
LagOrder lag_grid_point(const ModelSpec& spec, int max_lag, long long index);

/// SIC of one candidate on the common sample; nullopt when the fit is invalid.
std::optional<double> candidate_sic(const AlignedFrame& frame, const ModelSpec& spec, const LagOrder& lags,
                                    int sample_lag);

/// Strict ordering used to pick a winner: lower SIC, then smaller total lag, then lexicographic.
bool better_candidate(double sic_a, const LagOrder& a, double sic_b, const LagOrder& b);

/**
 * @brief SIC-minimising lag orders over the exhaustive grid.
 *
 * Every candidate is fitted on the sample implied by max_lag so the criteria
 * are comparable. Candidates are evaluated in parallel (OpenMP); the merge is
 * order-independent, so the result equals select_lags_serial bit for bit.
 * Throws DataError if no candidate can be fitted.
 */
LagSelection select_lags(const AlignedFrame& frame, const ModelSpec& spec, const LagSearchOptions& options = {});

/// Single-threaded reference for select_lags.
LagSelection select_lags_serial(const AlignedFrame& frame, const ModelSpec& spec,
                                const LagSearchOptions& options = {});

}  // namespace ardl
