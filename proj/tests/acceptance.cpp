// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ardl/batch.hpp"
#include "ardl/bounds.hpp"
#include "ardl/critval_mc.hpp"
#include "ardl/longrun.hpp"
#include "ardl/regression.hpp"
#include "test_support.hpp"

using namespace ardl;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kTurningPointRelTol = 0.005;
constexpr double kOlsRelTol = 1e-8;
constexpr double kOlsMaxCondition = 1e8;
constexpr double kOlsSeconds = 10.0;
constexpr double kLagRecoveryRate = 0.80;
constexpr double kLagSeconds = 60.0;
constexpr double kPhiTol = 0.1;
constexpr double kPhiHitRate = 0.90;
constexpr double kNullQuietRate = 0.85;
constexpr double kUecmSeconds = 60.0;
constexpr double kBoundsTol = 0.25;
constexpr double kMcSeconds = 120.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s C%d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// C1 ------------------------------------------------------------------------

void turning_points() {
  struct Case {
    const char* label;
    double b1, b2, printed;
  };
  const Case cases[] = {
      {"M1 COS", 19.277, -1.0556, 9235.41}, {"M1 ECU", 60.048, -3.524, 5013.55},
      {"M1 MEX", 41.005, -2.2446, 9265.93}, {"M3 ELSAL", 80.845, -5.082, 2847.2},
      {"M3 MEX", 27.960, -1.508, 10639.2},
  };
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const double tp = turning_point(c.b1, c.b2);
    const double rel = std::abs(tp - c.printed) / c.printed;
    worst = std::max(worst, rel);
    ok = ok && rel <= kTurningPointRelTol;
    detail += fmt("%s %.2f; ", c.label, tp);
  }
  report(1, "turning points", ok, detail + fmt("max rel err %.2e (tol %.1e)", worst, kTurningPointRelTol));
}

// C2 ------------------------------------------------------------------------

void bounds_decisions() {
  struct Row {
    const char* country;
    double f;
    Decision expected;
  };
  using D = Decision;
  const Row m1_rows[] = {
      {"ARG", 9.802, D::Cointegrated},     {"BOL", 1.8802, D::NotCointegrated}, {"BRA", 1.5295, D::NotCointegrated},
      {"CHI", 1.2032, D::NotCointegrated}, {"COL", 1.5022, D::NotCointegrated}, {"COS", 7.0367, D::Cointegrated},
      {"R.DOM", 2.9504, D::NotCointegrated}, {"CUBA", 1.3233, D::NotCointegrated}, {"ECU", 5.7418, D::Cointegrated},
      {"ELSAL", 3.336, D::NotCointegrated}, {"GUA", 1.0825, D::NotCointegrated}, {"HAI", 3.8588, D::Inconclusive},
      {"HON", 0.7988, D::NotCointegrated}, {"JAM", 1.6462, D::NotCointegrated}, {"MEX", 8.3755, D::Cointegrated},
      {"NIC", 2.7705, D::NotCointegrated}, {"PAN", 2.0131, D::NotCointegrated}, {"PAR", 2.6585, D::NotCointegrated},
      {"PERU", 8.8363, D::Cointegrated},   {"URU", 3.0064, D::NotCointegrated}, {"VEN", 3.0397, D::NotCointegrated},
  };
  const Row m4_rows[] = {{"CHI", 2.694, D::Inconclusive}, {"COL", 2.149, D::NotCointegrated}};
  int matched = 0, total = 0;
  std::string mismatches;
  const auto b2 = critical_bounds(2, Significance::Pct5, 58);
  for (const auto& r : m1_rows) {
    ++total;
    const auto d = decide(r.f, b2.lower, b2.upper);
    if (d == r.expected) ++matched; else mismatches += std::string(" M1 ") + r.country;
  }
  const auto b6 = critical_bounds(6, Significance::Pct5, 48);
  for (const auto& r : m4_rows) {
    ++total;
    const auto d = decide(r.f, b6.lower, b6.upper);
    if (d == r.expected) ++matched; else mismatches += std::string(" M4 ") + r.country;
  }
  report(2, "bounds decisions", matched == total,
         fmt("%d/%d rows match (k=2 bounds %.3f/%.3f, k=6 bounds %.3f/%.3f)%s", matched, total, b2.lower, b2.upper,
             b6.lower, b6.upper, mismatches.c_str()));
}

// C3 ------------------------------------------------------------------------

void random_problem(std::mt19937_64& rng, Eigen::MatrixXd& X, Eigen::VectorXd& y) {
  std::uniform_int_distribution<int> pdist(1, 12);
  const int p = pdist(rng);
  std::uniform_int_distribution<int> ndist(p + 3, 300);
  const int n = ndist(rng);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> lscale(-3.0, 3.0), mix(0.0, 0.9);
  X.resize(n, p);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < n; ++i) X(i, j) = z(rng);
  }
  X.col(0).setOnes();
  for (int j = 2; j < p; ++j) X.col(j) = mix(rng) * X.col(j - 1) + (1.0 - mix(rng)) * X.col(j);
  for (int j = 1; j < p; ++j) X.col(j) *= std::pow(10.0, lscale(rng));
  Eigen::VectorXd b(p);
  for (int j = 0; j < p; ++j) b(j) = z(rng) / X.col(j).norm() * std::sqrt(static_cast<double>(n));
  y = X * b;
  for (int i = 0; i < n; ++i) y(i) += z(rng);
}

void ols_oracle() {
  std::mt19937_64 rng(20240601);
  int done = 0, bad = 0, skipped = 0;
  double worst = 0.0, fit_seconds = 0.0;
  while (done < 1000) {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    random_problem(rng, X, y);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
    const auto& s = svd.singularValues();
    if (s(0) / s(s.size() - 1) > kOlsMaxCondition) {
      ++skipped;
      continue;
    }
    const auto t0 = Clock::now();
    const auto fit = ols(X, y);
    fit_seconds += seconds_since(t0);
    const auto ref = testing::oracle_ols(X, y);
    bool ok = ref.ok;
    for (Eigen::Index j = 0; ok && j < X.cols(); ++j) {
      // Relative to the coefficient, floored at its standard error for near-zero estimates.
      const double scale = std::max(std::abs(ref.beta(j)), std::sqrt(ref.covariance(j, j)));
      const double eb = std::abs(fit.coefficients(j) - ref.beta(j)) / scale;
      worst = std::max(worst, eb);
      ok = ok && eb <= kOlsRelTol;
      for (Eigen::Index k = 0; k < X.cols(); ++k) {
        const double sc = std::sqrt(ref.covariance(j, j) * ref.covariance(k, k));
        const double ev = std::abs(fit.covariance(j, k) - ref.covariance(j, k)) / sc;
        worst = std::max(worst, ev);
        ok = ok && ev <= kOlsRelTol;
      }
    }
    bad += ok ? 0 : 1;
    ++done;
  }
  report(3, "OLS oracle", bad == 0 && fit_seconds < kOlsSeconds,
         fmt("%d problems (%d ill-conditioned skipped), %d mismatches, max rel err %.2e (tol %.0e), fit time %.3f s",
             done, skipped, bad, worst, kOlsRelTol, fit_seconds));
}

// C4 ------------------------------------------------------------------------

// Exhaustive argmin by nested enumeration, independent of the library's grid indexing.
std::pair<LagOrder, double> brute_force(const AlignedFrame& f, const ModelSpec& spec, int max_lag) {
  const int L = std::max(max_lag, 1);
  const auto groups = static_cast<std::size_t>(spec.group_count());
  LagOrder best;
  double best_sic = std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<int> q(groups, 0);
  for (int m = 1; m <= L; ++m) {
    std::fill(q.begin(), q.end(), 0);
    while (true) {
      LagOrder cand{m, q};
      if (auto s = candidate_sic(f, spec, cand, L)) {
        if (!found || *s < best_sic ||
            (*s == best_sic && (cand.total() < best.total() || (cand.total() == best.total() && cand < best)))) {
          best = cand;
          best_sic = *s;
          found = true;
        }
      }
      std::ptrdiff_t g = static_cast<std::ptrdiff_t>(groups) - 1;
      while (g >= 0 && q[static_cast<std::size_t>(g)] == max_lag) q[static_cast<std::size_t>(g--)] = 0;
      if (g < 0) break;
      ++q[static_cast<std::size_t>(g)];
    }
  }
  return {best, best_sic};
}

// de_t = c + g1 de_{t-1} + g2 de_{t-2} + w0 dx_t + w1 dx_{t-1} + de e_{t-1} + dx x_{t-1} + u_t
AlignedFrame planted_ardl21(std::mt19937_64& rng, int T) {
  std::normal_distribution<double> z;
  const double c = 0.3, g1 = 0.4, g2 = -0.35, w0 = 0.8, w1 = 0.6, d_e = -0.3, d_x = 0.6;
  AlignedFrame f;
  f.first_year = 1000;
  f.last_year = 1000 + T - 1;
  f.names = {"e_ln", "y_ln"};
  f.data.resize(T, 2);
  const int burn = 100;
  double e = 0, x = 0, de1 = 0, de2 = 0, dx1 = 0;
  for (int t = -burn; t < T; ++t) {
    const double dx = z(rng);
    const double de = c + g1 * de1 + g2 * de2 + w0 * dx + w1 * dx1 + d_e * e + d_x * x + z(rng);
    e += de;
    x += dx;
    de2 = de1;
    de1 = de;
    dx1 = dx;
    if (t >= 0) {
      f.data(t, 0) = e;
      f.data(t, 1) = x;
    }
  }
  return f;
}

void lag_search() {
  const auto t0 = Clock::now();
  // Exhaustive re-check on random-walk grids with 0-2 controls and max lag 1-3.
  std::mt19937_64 rng(4242);
  int grids = 0, agree = 0;
  for (int trial = 0; trial < 30; ++trial) {
    ModelSpec spec;
    spec.income_order = 1 + trial % 2;
    for (int c = 0; c < trial % 3; ++c) spec.controls.push_back({"x" + std::to_string(c + 1), TransformKind::Identity});
    const int L = 1 + trial % 3;
    const auto f = testing::random_walk_frame(rng, spec.level_columns(), 45 + trial);
    const auto sel = select_lags(f, spec, {L, 1'000'000});
    const auto [order, s] = brute_force(f, spec, L);
    ++grids;
    agree += (sel.order == order && sel.sic == s) ? 1 : 0;
  }
  // Recovery of the planted (2,1) order.
  const auto spec = testing::bivariate_spec();
  const LagOrder truth{2, {1}};
  int hits = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 r(9000 + static_cast<unsigned>(s));
    const auto f = planted_ardl21(r, 500);
    hits += select_lags(f, spec, {4, 1'000'000}).order == truth ? 1 : 0;
  }
  const double secs = seconds_since(t0);
  const double rate = static_cast<double>(hits) / seeds;
  report(4, "lag search", agree == grids && rate >= kLagRecoveryRate && secs < kLagSeconds,
         fmt("brute-force argmin agrees on %d/%d grids; (2,1) recovered in %d/%d seeds (need >= %.0f%%); %.2f s",
             agree, grids, hits, seeds, 100 * kLagRecoveryRate, secs));
}

// C5 ------------------------------------------------------------------------

void uecm_sign() {
  const auto t0 = Clock::now();
  CriticalValueOptions opt;
  opt.allow_simulation = true;
  opt.replications = 10000;
  opt.bootstrap_resamples = 50;
  const CriticalValueProvider provider(opt);
  const auto spec = testing::bivariate_spec();
  const int seeds = 100, T = 500, max_lag = 2;

  auto fit_uecm = [&](const AlignedFrame& f) {
    const auto sel = select_lags(f, spec, {max_lag, 1'000'000});
    const auto fit = fit_ardl(f, spec, sel.order, max_lag);
    const auto lr = long_run(fit);
    return estimate_uecm(f, fit, lr, &provider, Significance::Pct5);
  };

  int planted_hits = 0, planted_naive = 0, null_quiet = 0, null_naive_quiet = 0;
  double phi_sum = 0.0, crit = 0.0;
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(5000 + static_cast<unsigned>(s));
    const auto u = fit_uecm(testing::error_correction_frame(rng, T, -0.5));
    phi_sum += u.phi;
    crit = u.phi_t_critical.value_or(std::numeric_limits<double>::quiet_NaN());
    const bool robust = u.phi_robust_significant.value_or(false);
    planted_hits += (std::abs(u.phi + 0.5) <= kPhiTol && u.phi < 0 && robust) ? 1 : 0;
    planted_naive += (u.phi < 0 && meets(u.phi_mark, Significance::Pct5)) ? 1 : 0;
  }
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(6000 + static_cast<unsigned>(s));
    const auto f = testing::random_walk_frame(rng, spec.level_columns(), T, 1000);
    const auto u = fit_uecm(f);
    null_quiet += u.phi_robust_significant.value_or(false) ? 0 : 1;
    null_naive_quiet += (u.phi < 0 && meets(u.phi_mark, Significance::Pct5)) ? 0 : 1;
  }
  const double secs = seconds_since(t0);
  const bool pass = planted_hits >= kPhiHitRate * seeds && null_quiet >= kNullQuietRate * seeds && secs < kUecmSeconds;
  report(5, "UECM sign", pass,
         fmt("planted phi=-0.5: mean phi %.4f, within +-%.1f and negative-significant in %d/%d (need >= %.0f%%); "
             "null: insignificant in %d/%d (need >= %.0f%%); 5%% critical t %.3f; "
             "naive Student-t marks: planted %d/%d, null insignificant %d/%d; %.2f s",
             phi_sum / seeds, kPhiTol, planted_hits, seeds, 100 * kPhiHitRate, null_quiet, seeds,
             100 * kNullQuietRate, crit, planted_naive, seeds, null_naive_quiet, seeds, secs));
}

// C6 ------------------------------------------------------------------------

void monte_carlo() {
  const McConfig cfg;  // k=2, n=58, 20000 replications, restricted intercept
  const auto t0 = Clock::now();
  const auto b = simulate_bounds_serial(cfg);
  const double secs = seconds_since(t0);
  const auto& l5 = b.at(Significance::Pct5);
  const double dl = l5.lower.value - 3.368, du = l5.upper.value - 4.205;
  const bool pass = std::abs(dl) <= kBoundsTol && std::abs(du) <= kBoundsTol && secs < kMcSeconds;

  McConfig unres = cfg;
  unres.deterministic = DeterministicCase::UnrestrictedIntercept;
  const auto u = simulate_bounds(unres);
  const auto& u5 = u.at(Significance::Pct5);
  report(6, "Monte Carlo bounds", pass,
         fmt("k=%d n=%d reps=%d seed=%llu %s case: 5%% bounds %.3f (se %.3f) / %.3f (se %.3f), offsets %+.3f / %+.3f "
             "(tol %.2f), serial %.2f s; unrestricted-intercept case for reference: %.3f (se %.3f) / %.3f (se %.3f), "
             "offsets %+.3f / %+.3f",
             cfg.k, cfg.n_obs, cfg.replications, static_cast<unsigned long long>(cfg.seed),
             std::string(to_string(cfg.deterministic)).c_str(), l5.lower.value, l5.lower.std_error, l5.upper.value,
             l5.upper.std_error, dl, du, kBoundsTol, secs, u5.lower.value, u5.lower.std_error, u5.upper.value,
             u5.upper.std_error, u5.lower.value - 3.368, u5.upper.value - 4.205));
}

// C7 + C8 -------------------------------------------------------------------

bool row_schema_ok(const nlohmann::ordered_json& row) {
  for (const char* key : {"country", "model", "controls", "controls_dropped", "succeeded", "lags", "bounds_test",
                          "long_run", "turning_point", "turning_point_in_sample", "uecm", "warnings"}) {
    if (!row.contains(key)) return false;
  }
  if (!row.at("warnings").is_array() || !row.at("succeeded").is_boolean()) return false;
  if (!row.at("succeeded").get<bool>()) return true;
  const auto& bt = row.at("bounds_test");
  if (!bt.is_object() || !bt.contains("f_stat") || !bt.contains("decision") || !bt.contains("critical_values")) return false;
  const auto dec = bt.at("decision").get<std::string>();
  if (dec != "CI" && dec != "NOT CI" && dec != "Inconclusive") return false;
  if (dec == "CI") return row.at("long_run").is_object() && row.at("uecm").is_object();
  return row.at("long_run").is_null() && row.at("uecm").is_null();
}

struct Rendered {
  std::vector<std::string> csv;
  std::string json;
  bool operator==(const Rendered&) const = default;
};

Rendered rendered(const BatchResult& r, const RunConfig& cfg) {
  Rendered out;
  for (const auto& m : cfg.models) out.csv.push_back(render_csv(r, m));
  out.json = render_json(r, cfg);
  return out;
}

void batch_and_determinism() {
  const fs::path data = ARDL_DATA_DIR;
  RunConfig cfg = RunConfig::load(data / "run_all.json");
  const auto out_dir = fs::temp_directory_path() / "ardl_acceptance_out";
  fs::remove_all(out_dir);
  cfg.output_dir = out_dir;

  const auto t0 = Clock::now();
  const auto first = run_batch(cfg);
  const double secs = seconds_since(t0);
  const auto ref = rendered(first, cfg);

  // C7: all six presets on the bundled synthetic panel.
  const auto files = render(first, cfg);
  bool files_ok = true;
  for (const auto& f : files) files_ok = files_ok && fs::exists(f) && fs::file_size(f) > 0;
  bool schema_ok = false;
  std::size_t json_rows = 0;
  try {
    const auto j = nlohmann::ordered_json::parse(ref.json);
    schema_ok = j.at("schema") == "ardl-batch/1" && j.at("rows").is_array();
    json_rows = j.at("rows").size();
    for (const auto& row : j.at("rows")) schema_ok = schema_ok && row_schema_ok(row);
  } catch (const std::exception&) {
    schema_ok = false;
  }
  const std::size_t expected = cfg.models.size() * cfg.countries.size();
  const int ok_rows = first.succeeded();
  report(7, "synthetic panel, all presets",
         cfg.models.size() == 6 && first.rows.size() == expected && json_rows == expected && schema_ok && files_ok &&
             ok_rows == static_cast<int>(expected),
         fmt("%zu presets x %zu countries = %zu rows, %d estimated, schema %s, %zu files written; %.2f s",
             cfg.models.size(), cfg.countries.size(), first.rows.size(), ok_rows, schema_ok ? "valid" : "INVALID",
             files.size(), secs));

  // C8: identical bytes across repeated runs and worker counts.
  std::vector<std::pair<std::string, std::function<BatchResult()>>> runs = {
      {"repeat", [&] { return run_batch(cfg); }},
      {"serial", [&] { return run_batch_serial(cfg); }},
      {"threads=1", [&] { auto c = cfg; c.threads = 1; return run_batch(c); }},
      {"threads=3", [&] { auto c = cfg; c.threads = 3; return run_batch(c); }},
  };
  std::string detail;
  bool same = true;
  for (const auto& [label, run] : runs) {
    const bool eq = rendered(run(), cfg) == ref;
    same = same && eq;
    detail += label + (eq ? " identical; " : " DIFFERS; ");
  }
  report(8, "determinism", same, detail + fmt("%zu CSV files + results.json compared byte for byte", cfg.models.size()));
  fs::remove_all(out_dir);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<std::function<void()>> steps = {turning_points, bounds_decisions, ols_oracle,  lag_search,
                                                     uecm_sign,      monte_carlo,      batch_and_determinism};
  for (const auto& step : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      std::printf("FAIL (exception) %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s: %d failing criteria, %.1f s total\n", failures == 0 ? "ALL PASS" : "FAILURES", failures,
              seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
