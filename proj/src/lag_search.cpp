#include <cmath>
#include <limits>
#include <sstream>

#include <omp.h>

#include "ardl/ardl_model.hpp"
#include "ardl/errors.hpp"

namespace ardl {

namespace {

// Differences and levels of every group on the common sample, built once per
// search so that each candidate only copies columns.
class SearchContext {
 public:
  SearchContext(const AlignedFrame& frame, const ModelSpec& spec, int sample_lag)
      : spec_(spec) {
    const auto names = spec.level_columns();
    const int T = static_cast<int>(frame.rows());
    start_ = sample_lag + 1;
    rows_ = T - start_;
    if (rows_ <= 0) throw DataError("frame too short for max_lag " + std::to_string(sample_lag));
    groups_ = static_cast<int>(names.size());
    y_.resize(rows_);
    levels_.resize(rows_, groups_);
    diffs_.assign(static_cast<std::size_t>(groups_), Eigen::MatrixXd(rows_, sample_lag + 1));
    for (int g = 0; g < groups_; ++g) {
      const auto col = frame.column_index(names[static_cast<std::size_t>(g)]);
      for (int i = 0; i < rows_; ++i) {
        const int t = start_ + i;
        levels_(i, g) = frame.data(t - 1, col);
        for (int l = 0; l <= sample_lag; ++l) {
          diffs_[static_cast<std::size_t>(g)](i, l) = frame.data(t - l, col) - frame.data(t - l - 1, col);
        }
      }
    }
    y_ = diffs_[0].col(0);
  }

  int rows() const { return rows_; }

  int columns(const LagOrder& lags) const {
    int c = (spec_.include_intercept ? 1 : 0) + lags.dependent + groups_;
    for (int q : lags.regressors) c += q + 1;
    return c;
  }

  std::optional<double> sic(const LagOrder& lags, Eigen::MatrixXd& X) const {
    const int p = columns(lags);
    if (rows_ <= p) return std::nullopt;
    X.resize(rows_, p);
    int c = 0;
    if (spec_.include_intercept) X.col(c++).setOnes();
    X.middleCols(c, lags.dependent) = diffs_[0].middleCols(1, lags.dependent);
    c += lags.dependent;
    for (std::size_t g = 0; g < lags.regressors.size(); ++g) {
      const int w = lags.regressors[g] + 1;
      X.middleCols(c, w) = diffs_[g + 1].leftCols(w);
      c += w;
    }
    X.middleCols(c, groups_) = levels_;
    const auto rss = ols_rss(X, y_);
    if (!rss) return std::nullopt;
    return ardl::sic(*rss, rows_, p);
  }

 private:
  const ModelSpec& spec_;
  int start_ = 0;
  int rows_ = 0;
  int groups_ = 0;
  Eigen::VectorXd y_;
  Eigen::MatrixXd levels_;
  std::vector<Eigen::MatrixXd> diffs_;
};

struct Best {
  bool found = false;
  double sic = std::numeric_limits<double>::infinity();
  LagOrder order;

  void offer(double s, const LagOrder& lags) {
    if (!found || better_candidate(s, lags, sic, order)) {
      found = true;
      sic = s;
      order = lags;
    }
  }
};

int effective_lag(int max_lag) { return std::max(max_lag, 1); }

LagSelection finish(const Best& best, const SearchContext& ctx, const ModelSpec& spec, long long evaluated,
                    long long skipped) {
  if (!best.found) {
    throw DataError("no lag candidate could be fitted (" + std::to_string(skipped) +
                    " rank-deficient or over-parameterised) for " + std::to_string(spec.group_count()) +
                    " regressor groups");
  }
  LagSelection sel;
  sel.order = best.order;
  sel.sic = best.sic;
  sel.n_obs = ctx.rows();
  sel.evaluated = evaluated;
  sel.skipped = skipped;
  return sel;
}

// Coordinate-wise search: dependent lag first, then each regressor group in order.
LagSelection staged_search(const AlignedFrame& frame, const ModelSpec& spec, const LagSearchOptions& options) {
  const int L = effective_lag(options.max_lag);
  SearchContext ctx(frame, spec, L);
  Eigen::MatrixXd X;
  LagOrder cur{1, std::vector<int>(static_cast<std::size_t>(spec.group_count()), 0)};
  long long evaluated = 0, skipped = 0;
  Best overall;

  // Each stage scans one slot with the others held at their current values.
  auto sweep = [&](auto&& slot, int lo, int hi) {
    Best stage;
    const int keep = slot(cur);
    for (int v = lo; v <= hi; ++v) {
      LagOrder trial = cur;
      slot(trial) = v;
      if (auto s = ctx.sic(trial, X)) {
        ++evaluated;
        stage.offer(*s, trial);
        overall.offer(*s, trial);
      } else {
        ++skipped;
      }
    }
    slot(cur) = stage.found ? slot(stage.order) : keep;
  };
  sweep([](LagOrder& o) -> int& { return o.dependent; }, 1, L);
  for (std::size_t g = 0; g < cur.regressors.size(); ++g) {
    sweep([g](LagOrder& o) -> int& { return o.regressors[g]; }, 0, options.max_lag);
  }

  auto sel = finish(overall, ctx, spec, evaluated, skipped);
  sel.staged = true;
  std::ostringstream w;
  w << "lag grid of " << lag_grid_size(spec, options.max_lag) << " candidates exceeds budget "
    << options.grid_budget << "; used staged search";
  sel.warnings.push_back(w.str());
  return sel;
}

LagSelection search(const AlignedFrame& frame, const ModelSpec& spec, const LagSearchOptions& options,
                    bool parallel) {
  spec.validate();
  if (options.max_lag < 0) throw std::invalid_argument("max_lag must be non-negative");
  const long long total = lag_grid_size(spec, options.max_lag);
  if (total > options.grid_budget) return staged_search(frame, spec, options);

  const int L = effective_lag(options.max_lag);
  SearchContext ctx(frame, spec, L);
  Best best;
  long long evaluated = 0, skipped = 0;

  if (parallel) {
#pragma omp parallel reduction(+ : evaluated, skipped)
    {
      Best local;
      Eigen::MatrixXd X;
#pragma omp for schedule(dynamic, 32) nowait
      for (long long i = 0; i < total; ++i) {
        const LagOrder lags = lag_grid_point(spec, options.max_lag, i);
        if (auto s = ctx.sic(lags, X)) {
          ++evaluated;
          local.offer(*s, lags);
        } else {
          ++skipped;
        }
      }
#pragma omp critical(ardl_lag_merge)
      {
        if (local.found) best.offer(local.sic, local.order);
      }
    }
  } else {
    Eigen::MatrixXd X;
    for (long long i = 0; i < total; ++i) {
      const LagOrder lags = lag_grid_point(spec, options.max_lag, i);
      if (auto s = ctx.sic(lags, X)) {
        ++evaluated;
        best.offer(*s, lags);
      } else {
        ++skipped;
      }
    }
  }
  return finish(best, ctx, spec, evaluated, skipped);
}

}  // namespace

long long lag_grid_size(const ModelSpec& spec, int max_lag) {
  long long n = std::max(max_lag, 1);
  for (int g = 0; g < spec.group_count(); ++g) {
    n *= (max_lag + 1);
    if (n > (1LL << 50)) return n;
  }
  return n;
}

LagOrder lag_grid_point(const ModelSpec& spec, int max_lag, long long index) {
  const int groups = spec.group_count();
  LagOrder lags{1, std::vector<int>(static_cast<std::size_t>(groups), 0)};
  for (int g = groups - 1; g >= 0; --g) {
    lags.regressors[static_cast<std::size_t>(g)] = static_cast<int>(index % (max_lag + 1));
    index /= (max_lag + 1);
  }
  lags.dependent = 1 + static_cast<int>(index);
  return lags;
}

std::optional<double> candidate_sic(const AlignedFrame& frame, const ModelSpec& spec, const LagOrder& lags,
                                    int sample_lag) {
  DesignMatrix dm;
  try {
    dm = build_design(frame, spec, lags, sample_lag);
  } catch (const DataError&) {
    return std::nullopt;
  }
  const auto rss = ols_rss(dm.X, dm.y);
  if (!rss) return std::nullopt;
  return sic(*rss, static_cast<int>(dm.X.rows()), static_cast<int>(dm.X.cols()));
}

bool better_candidate(double sic_a, const LagOrder& a, double sic_b, const LagOrder& b) {
  if (sic_a != sic_b) return sic_a < sic_b;
  if (a.total() != b.total()) return a.total() < b.total();
  return a < b;
}

LagSelection select_lags(const AlignedFrame& frame, const ModelSpec& spec, const LagSearchOptions& options) {
  return search(frame, spec, options, true);
}

LagSelection select_lags_serial(const AlignedFrame& frame, const ModelSpec& spec, const LagSearchOptions& options) {
  return search(frame, spec, options, false);
}

}  // namespace ardl
