#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ardl/regression.hpp"

namespace ardl {

/**
 * Deterministic terms of the bounds regression (both are intercept, no trend).
 *
 * RestrictedIntercept: the intercept belongs to the tested block, q = k + 2.
 * UnrestrictedIntercept: only the lagged levels are tested, q = k + 1.
 */
enum class DeterministicCase { RestrictedIntercept, UnrestrictedIntercept };

std::string_view to_string(DeterministicCase c);
DeterministicCase parse_case(std::string_view text);

struct McConfig {
  int k = 2;                    ///< level regressors besides the dependent
  int n_obs = 58;               ///< observations in each simulated regression
  int replications = 20000;
  std::uint64_t seed = 20051;
  DeterministicCase deterministic = DeterministicCase::RestrictedIntercept;
  int bootstrap_resamples = 200;

  /// replications >= 1000, k >= 1, n_obs >= 20, bootstrap_resamples >= 2.
  void validate() const;
};

struct QuantileEstimate {
  double value = 0.0;
  double std_error = 0.0;  ///< bootstrap standard error
};

struct McLevel {
  Significance significance = Significance::Pct5;
  QuantileEstimate lower;  ///< upper-tail F quantile, all regressors I(0)
  QuantileEstimate upper;  ///< upper-tail F quantile, all regressors I(1)
  /// Lower-tail quantiles of the t-ratio on the lagged dependent level
  /// (the error-correction coefficient), for I(0) and I(1) regressors.
  QuantileEstimate t_i0;
  QuantileEstimate t_i1;
};

struct McBounds {
  McConfig config;
  std::array<McLevel, 3> levels;  ///< 10%, 5%, 1%
  int resampled = 0;              ///< replications redrawn after a rank failure

  const McLevel& at(Significance s) const;
};

/// Raw simulated statistics, one entry per replication.
struct McDraws {
  std::vector<double> f_i0, f_i1, t_i0, t_i1;
  int resampled = 0;
};

/**
 * @brief Simulated small-sample bounds for the F test on the lagged levels.
 *
 * Each replication draws a driftless Gaussian random-walk dependent and k
 * regressors, once as white noise (I(0), lower bound) and once cumulated
 * (I(1), upper bound), from the same innovations; regresses the first
 * difference of the dependent on an intercept and the lagged levels; and
 * records the F statistic and the t-ratio on the lagged dependent.
 * Replication r uses Philox substream (r, retry), so the output is
 * independent of thread count. Throws std::runtime_error if more than 1% of
 * replications need a redraw.
 */
McBounds simulate_bounds(const McConfig& cfg);

/// Single-threaded reference implementation of simulate_bounds.
McBounds simulate_bounds_serial(const McConfig& cfg);

McDraws simulate_draws(const McConfig& cfg, bool parallel = true);

/// Type-7 (linear interpolation) quantile of unsorted data.
double empirical_quantile(std::vector<double> data, double prob);

}  // namespace ardl
