#include "ardl/critval_mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "ardl/random.hpp"

namespace ardl {

namespace {

constexpr std::uint64_t kBootstrapSalt = 0x9E3779B97F4A7C15ULL;
constexpr std::array<Significance, 3> kLevels = {Significance::Pct10, Significance::Pct5, Significance::Pct1};

struct RegressionStats {
  bool ok = false;
  double f = 0.0;
  double t = 0.0;
};

// Bounds regression of dy on [1, levels]; the first level column is the dependent.
RegressionStats bounds_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& dy, DeterministicCase c) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < p) return {};
  const Eigen::VectorXd b = qr.solve(dy);
  const double rss = (dy - X * b).squaredNorm();
  if (!(rss > 0.0)) return {};

  const int k_levels = static_cast<int>(p) - 1;
  double rss_r = 0.0;
  int q = 0;
  if (c == DeterministicCase::RestrictedIntercept) {
    rss_r = dy.squaredNorm();
    q = k_levels + 1;
  } else {
    rss_r = (dy.array() - dy.mean()).matrix().squaredNorm();
    q = k_levels;
  }
  const double s2 = rss / static_cast<double>(n - p);

  // Variance of the lagged-dependent coefficient: e_1' (X'X)^-1 e_1.
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(p);
  unit(1) = 1.0;
  const Eigen::VectorXd permuted = qr.colsPermutation().transpose() * unit;
  const Eigen::VectorXd w = R.transpose().triangularView<Eigen::Lower>().solve(permuted);

  RegressionStats out;
  out.ok = true;
  out.f = ((rss_r - rss) / q) / s2;
  out.t = b(1) / std::sqrt(s2 * w.squaredNorm());
  return out;
}

struct Replication {
  double f_i0, f_i1, t_i0, t_i1;
  int retries;
};

Replication replicate(const McConfig& cfg, std::uint32_t r) {
  const int n = cfg.n_obs;
  const int k = cfg.k;
  Eigen::MatrixXd X0(n, k + 2), X1(n, k + 2);
  Eigen::VectorXd dy(n);
  Eigen::MatrixXd eps(n + 1, k + 1);
  for (std::uint32_t attempt = 0;; ++attempt) {
    if (attempt > 100) throw std::runtime_error("critval simulation: replication cannot be fitted");
    Philox rng(cfg.seed, r, attempt);
    for (int j = 0; j <= k; ++j) {
      for (int t = 0; t <= n; ++t) eps(t, j) = rng.normal();
    }
    // Driftless random walks (cumulated innovations) for the I(1) columns.
    Eigen::MatrixXd walk = eps;
    for (int t = 1; t <= n; ++t) walk.row(t) += walk.row(t - 1);

    for (int t = 1; t <= n; ++t) {
      const int i = t - 1;
      dy(i) = eps(t, 0);
      X0(i, 0) = X1(i, 0) = 1.0;
      X0(i, 1) = X1(i, 1) = walk(t - 1, 0);
      for (int j = 1; j <= k; ++j) {
        X0(i, j + 1) = eps(t - 1, j);
        X1(i, j + 1) = walk(t - 1, j);
      }
    }
    const auto a = bounds_regression(X0, dy, cfg.deterministic);
    const auto b = bounds_regression(X1, dy, cfg.deterministic);
    if (a.ok && b.ok) return {a.f, b.f, a.t, b.t, static_cast<int>(attempt)};
  }
}

McBounds summarise(const McConfig& cfg, const McDraws& draws, bool parallel) {
  McBounds out;
  out.config = cfg;
  out.resampled = draws.resampled;
  const std::array<const std::vector<double>*, 4> pops = {&draws.f_i0, &draws.f_i1, &draws.t_i0, &draws.t_i1};

  // Probability for stat s at level l: F stats upper tail, t stats lower tail.
  auto prob = [](int s, Significance lvl) { return s < 2 ? 1.0 - alpha_of(lvl) : alpha_of(lvl); };

  const int B = cfg.bootstrap_resamples;
  const std::size_t R = draws.f_i0.size();
  // boot[b][s * 3 + l]
  std::vector<std::array<double, 12>> boot(static_cast<std::size_t>(B));
  auto one_resample = [&](int b) {
    Philox rng(cfg.seed ^ kBootstrapSalt, static_cast<std::uint32_t>(b), 0xB0u);
    std::vector<std::size_t> idx(R);
    for (auto& i : idx) i = rng.below(static_cast<std::uint32_t>(R));
    std::vector<double> sample(R);
    for (int s = 0; s < 4; ++s) {
      for (std::size_t i = 0; i < R; ++i) sample[i] = (*pops[static_cast<std::size_t>(s)])[idx[i]];
      std::sort(sample.begin(), sample.end());
      for (int l = 0; l < 3; ++l) {
        const double h = (static_cast<double>(R) - 1.0) * prob(s, kLevels[static_cast<std::size_t>(l)]);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, R - 1);
        boot[static_cast<std::size_t>(b)][static_cast<std::size_t>(s * 3 + l)] =
            sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
      }
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int b = 0; b < B; ++b) one_resample(b);
  } else {
    for (int b = 0; b < B; ++b) one_resample(b);
  }

  for (int l = 0; l < 3; ++l) {
    McLevel& lv = out.levels[static_cast<std::size_t>(l)];
    lv.significance = kLevels[static_cast<std::size_t>(l)];
    std::array<QuantileEstimate*, 4> slots = {&lv.lower, &lv.upper, &lv.t_i0, &lv.t_i1};
    for (int s = 0; s < 4; ++s) {
      QuantileEstimate& q = *slots[static_cast<std::size_t>(s)];
      q.value = empirical_quantile(*pops[static_cast<std::size_t>(s)], prob(s, lv.significance));
      double mean = 0.0;
      for (int b = 0; b < B; ++b) mean += boot[static_cast<std::size_t>(b)][static_cast<std::size_t>(s * 3 + l)];
      mean /= B;
      double ss = 0.0;
      for (int b = 0; b < B; ++b) {
        const double d = boot[static_cast<std::size_t>(b)][static_cast<std::size_t>(s * 3 + l)] - mean;
        ss += d * d;
      }
      q.std_error = std::sqrt(ss / (B - 1));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(DeterministicCase c) {
  return c == DeterministicCase::RestrictedIntercept ? "restricted_intercept" : "unrestricted_intercept";
}

DeterministicCase parse_case(std::string_view text) {
  if (text == "restricted_intercept" || text == "restricted" || text == "II") {
    return DeterministicCase::RestrictedIntercept;
  }
  if (text == "unrestricted_intercept" || text == "unrestricted" || text == "III") {
    return DeterministicCase::UnrestrictedIntercept;
  }
  throw std::invalid_argument("unknown deterministic case '" + std::string(text) + "'");
}

void McConfig::validate() const {
  if (replications < 1000) throw std::invalid_argument("critval: replications must be at least 1000");
  if (k < 1) throw std::invalid_argument("critval: k must be at least 1");
  if (n_obs < 20) throw std::invalid_argument("critval: n_obs must be at least 20");
  if (n_obs <= k + 2) throw std::invalid_argument("critval: n_obs too small for k");
  if (bootstrap_resamples < 2) throw std::invalid_argument("critval: bootstrap_resamples must be at least 2");
}

const McLevel& McBounds::at(Significance s) const {
  for (const auto& l : levels) {
    if (l.significance == s) return l;
  }
  throw std::out_of_range("significance level not simulated");
}

double empirical_quantile(std::vector<double> data, double prob) {
  if (data.empty()) throw std::invalid_argument("empirical_quantile: no data");
  std::sort(data.begin(), data.end());
  const double h = (static_cast<double>(data.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, data.size() - 1);
  return data[lo] + (h - static_cast<double>(lo)) * (data[hi] - data[lo]);
}

McDraws simulate_draws(const McConfig& cfg, bool parallel) {
  cfg.validate();
  const int R = cfg.replications;
  McDraws d;
  d.f_i0.resize(static_cast<std::size_t>(R));
  d.f_i1.resize(static_cast<std::size_t>(R));
  d.t_i0.resize(static_cast<std::size_t>(R));
  d.t_i1.resize(static_cast<std::size_t>(R));
  int retries = 0;
  auto body = [&](int r) {
    const auto rep = replicate(cfg, static_cast<std::uint32_t>(r));
    const auto i = static_cast<std::size_t>(r);
    d.f_i0[i] = rep.f_i0;
    d.f_i1[i] = rep.f_i1;
    d.t_i0[i] = rep.t_i0;
    d.t_i1[i] = rep.t_i1;
    return rep.retries;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : retries)
    for (int r = 0; r < R; ++r) retries += body(r);
  } else {
    for (int r = 0; r < R; ++r) retries += body(r);
  }
  d.resampled = retries;
  if (retries > R / 100) {
    throw std::runtime_error("critval simulation: " + std::to_string(retries) +
                             " rank failures exceed 1% of replications");
  }
  return d;
}

McBounds simulate_bounds(const McConfig& cfg) { return summarise(cfg, simulate_draws(cfg, true), true); }

McBounds simulate_bounds_serial(const McConfig& cfg) { return summarise(cfg, simulate_draws(cfg, false), false); }

}  // namespace ardl
