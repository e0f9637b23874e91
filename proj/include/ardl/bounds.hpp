#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ardl/ardl_model.hpp"
#include "ardl/critval_mc.hpp"

namespace ardl {

enum class Decision { Cointegrated, Inconclusive, NotCointegrated };

/// "CI", "Inconclusive", "NOT CI".
std::string_view to_string(Decision d);

/// Three-way rule. A statistic equal to either bound is Inconclusive.
Decision decide(double f_stat, double lower, double upper);

struct CriticalBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool simulated = false;
  std::string source;
};

/// One row of the embedded small-sample table (Narayan 2005 style values).
struct PublishedBound {
  int k;
  Significance significance;
  std::string_view variant;  ///< "" for the default row, else a preset id
  double lower;
  double upper;
};

const std::vector<PublishedBound>& published_bounds();

/// Exact-match lookup; a non-empty variant falls back to the default row.
std::optional<CriticalBounds> lookup_published(int k, Significance s, std::string_view variant = {});

/// Table-only bounds. Throws std::out_of_range for a cell the table lacks.
CriticalBounds critical_bounds(int k, Significance s, int n_obs, std::string_view variant = {});

struct CriticalValueOptions {
  bool allow_simulation = false;
  int replications = 20000;
  std::uint64_t seed = 20051;
  /// Matches the case the embedded table was tabulated under.
  DeterministicCase deterministic = DeterministicCase::RestrictedIntercept;
  int bootstrap_resamples = 200;
};

/**
 * @brief Critical values from the embedded table, with simulated fill-in.
 *
 * Simulated cells are cached per (k, n_obs); the cache is guarded by a mutex
 * so one provider can serve a parallel batch. Results are deterministic for
 * a fixed seed, so concurrent first requests agree.
 */
class CriticalValueProvider {
 public:
  explicit CriticalValueProvider(CriticalValueOptions options = {}) : options_(options) {}

  const CriticalValueOptions& options() const noexcept { return options_; }

  /// Table row if present, else a simulated cell if allowed, else std::out_of_range.
  CriticalBounds bounds(int k, Significance s, int n_obs, std::string_view variant = {}) const;

  /// Lower-tail critical value for the error-correction t-ratio under I(1)
  /// regressors; requires simulation to be enabled.
  std::optional<double> ec_t_critical(int k, Significance s, int n_obs) const;

  /// Full simulated result for (k, n_obs), computed once.
  const McBounds& simulated(int k, int n_obs) const;

 private:
  CriticalValueOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, McBounds> cache_;
};

struct BoundsTestResult {
  double f_stat = 0.0;
  int k = 0;
  int q = 0;  ///< restrictions tested
  std::map<Significance, CriticalBounds> bounds;
  Decision decision = Decision::NotCointegrated;
  Significance significance_used = Significance::Pct5;
  DeterministicCase deterministic = DeterministicCase::UnrestrictedIntercept;
};

/**
 * @brief Joint F test that every lagged level coefficient is zero.
 *
 * The tested block is the lagged levels (dependent included); the intercept
 * stays unrestricted unless `deterministic` asks for it to be tested too.
 * k = number of level regressors besides the dependent. Bounds are filled for
 * every significance level the provider can serve; the level used for the
 * decision must be available.
 */
BoundsTestResult bounds_test(const ArdlFit& fit, const CriticalValueProvider& provider,
                             Significance significance = Significance::Pct5, std::string_view variant = {},
                             DeterministicCase deterministic = DeterministicCase::UnrestrictedIntercept);

/// Table-only convenience overload.
BoundsTestResult bounds_test(const ArdlFit& fit, Significance significance = Significance::Pct5,
                             std::string_view variant = {});

}  // namespace ardl
