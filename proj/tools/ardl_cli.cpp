// ardl: batch runner and diagnostics for ARDL bounds-testing EKC models.
//
//   ardl run --config cfg.json [--output-dir DIR] [--threads N] [--serial]
//   ardl critval --k 2 --n 58 --reps 20000 --seed S [--alpha 0.05] [--case restricted]
//   ardl inspect --country MEX --model M1 [--manifest data/synthetic/manifest.json]
//
// ARDL_OUTPUT_DIR overrides the output directory of `run`.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ardl/batch.hpp"
#include "ardl/critval_mc.hpp"
#include "ardl/errors.hpp"

namespace {

using namespace ardl;

int cmd_run(const std::string& config_path, const std::string& output_dir, int threads, bool serial) {
  RunConfig cfg = RunConfig::load(config_path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  apply_env_overrides(cfg);
  if (threads > 0) cfg.threads = threads;

  const BatchResult result = serial ? run_batch_serial(cfg) : run_batch(cfg);
  const auto files = render(result, cfg);
  for (const auto& row : result.rows) {
    std::cerr << row.model << ' ' << row.country << ": "
              << (row.bounds ? std::string(to_string(row.bounds->decision)) : "failed");
    if (!row.warnings.empty()) std::cerr << " [" << row.warnings.size() << " warning(s)]";
    std::cerr << '\n';
  }
  for (const auto& f : files) std::cout << f.string() << '\n';
  std::cerr << result.succeeded() << " of " << result.rows.size() << " cells succeeded\n";
  return result.succeeded() > 0 ? 0 : 1;
}

int cmd_critval(int k, int n, int reps, std::uint64_t seed, double alpha, const std::string& cse, int bootstrap,
                bool serial) {
  McConfig cfg;
  cfg.k = k;
  cfg.n_obs = n;
  cfg.replications = reps;
  cfg.seed = seed;
  cfg.deterministic = parse_case(cse);
  cfg.bootstrap_resamples = bootstrap;
  Significance sig;
  if (alpha == 0.01) {
    sig = Significance::Pct1;
  } else if (alpha == 0.05) {
    sig = Significance::Pct5;
  } else if (alpha == 0.10 || alpha == 0.1) {
    sig = Significance::Pct10;
  } else {
    throw ConfigError("--alpha must be 0.01, 0.05 or 0.10");
  }
  const McBounds b = serial ? simulate_bounds_serial(cfg) : simulate_bounds(cfg);
  const McLevel& lv = b.at(sig);
  nlohmann::ordered_json j;
  j["k"] = k;
  j["n"] = n;
  j["alpha"] = alpha;
  j["lower"] = lv.lower.value;
  j["upper"] = lv.upper.value;
  j["se_lower"] = lv.lower.std_error;
  j["se_upper"] = lv.upper.std_error;
  j["reps"] = reps;
  j["seed"] = seed;
  j["case"] = std::string(to_string(cfg.deterministic));
  j["t_ec_i0"] = lv.t_i0.value;
  j["t_ec_i1"] = lv.t_i1.value;
  j["resampled"] = b.resampled;
  std::cout << j.dump(2) << '\n';
  return 0;
}

void print_ols(const OlsFit& f) {
  const auto marks = t_marks(f);
  std::printf("  %-24s %14s %12s %9s %9s\n", "term", "estimate", "std.err", "t", "p");
  for (Eigen::Index j = 0; j < f.coefficients.size(); ++j) {
    const auto& m = marks[static_cast<std::size_t>(j)];
    std::printf("  %-24s %14.6f %12.6f %9.3f %9.4f %s\n", f.column_names[static_cast<std::size_t>(j)].c_str(),
                f.coefficients(j), f.std_errors(j), f.t_ratio(j), m.p_value, std::string(superscript(m.level)).c_str());
  }
  std::printf("  n = %d, p = %d, RSS = %.6g, sigma^2 = %.6g\n", f.n_obs, f.n_params, f.rss, f.sigma2);
}

int cmd_inspect(const std::string& country, const std::string& model, const std::string& manifest_path,
                const std::string& config_path) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = RunConfig::load(config_path);
  if (!manifest_path.empty()) cfg.manifest = manifest_path;
  cfg.models = {model};
  cfg.countries = {country};
  cfg.validate();

  const DataStore store(Manifest::load(cfg.manifest));
  const Dataset data = store.dataset(country);
  CriticalValueOptions cv;
  cv.allow_simulation = cfg.simulate_missing_bounds;
  cv.replications = cfg.mc_replications;
  cv.bootstrap_resamples = cfg.mc_bootstrap;
  cv.seed = cfg.seed;
  const CriticalValueProvider provider(cv);
  const CountryRow row = run_cell(data, model, cfg, provider, store.manifest().excluded(country, model));

  std::printf("%s %s  controls: %zu", country.c_str(), model.c_str(), row.spec.controls.size());
  for (const auto& c : row.spec.control_columns()) std::printf(" %s", c.c_str());
  std::printf("\n");
  if (row.selection) {
    std::printf("lag selection: ARDL%s  SIC = %.4f  (%lld fitted, %lld skipped%s)\n",
                row.selection->order.to_string().c_str(), row.selection->sic, row.selection->evaluated,
                row.selection->skipped, row.selection->staged ? ", staged" : "");
  }
  if (row.fit) {
    std::printf("sample %d-%d\nARDL regression:\n", row.fit->first_year, row.fit->last_year);
    print_ols(row.fit->ols);
  }
  if (row.bounds) {
    std::printf("bounds test: F = %.4f, k = %d -> %s at %s\n", row.bounds->f_stat, row.bounds->k,
                std::string(to_string(row.bounds->decision)).c_str(),
                std::string(to_string(row.bounds->significance_used)).c_str());
    for (const auto& [sig, b] : row.bounds->bounds) {
      std::printf("  %-4s (%.3f, %.3f) %s\n", std::string(to_string(sig)).c_str(), b.lower, b.upper, b.source.c_str());
    }
  }
  if (row.long_run) {
    std::printf("long run (delta_dep = %.6f):\n", row.long_run->delta_dep);
    auto show = [](const Coefficient& c) {
      std::printf("  %-24s %14.6f %12.6f %s\n", c.name.c_str(), c.estimate, c.std_error,
                  std::string(superscript(c.mark.level)).c_str());
    };
    if (row.long_run->beta0) show(*row.long_run->beta0);
    for (const auto& b : row.long_run->betas) show(b);
    std::printf("  shape: %s\n", std::string(to_string(row.long_run->shape)).c_str());
  }
  if (row.turning_point) {
    std::printf("turning point: %.2f (%s sample)\n", *row.turning_point,
                row.turning_point_in_sample.value_or(false) ? "inside" : "outside");
  }
  if (row.uecm) {
    std::printf("UECM:\n");
    print_ols(row.uecm->ols);
    std::printf("  phi = %.6f; ARDL t = %.3f", row.uecm->phi, row.uecm->phi_t_ardl);
    if (row.uecm->phi_t_critical) {
      std::printf(", simulated critical %.3f -> %s", *row.uecm->phi_t_critical,
                  row.uecm->phi_robust_significant.value_or(false) ? "significant" : "not significant");
    }
    std::printf("\n");
  }
  for (const auto& w : row.warnings) std::printf("warning: %s\n", w.c_str());
  return row.succeeded() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ARDL bounds testing and EKC batch estimation"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  int threads = 0;
  bool serial = false;
  auto* run = app.add_subcommand("run", "Run the configured countries x models batch");
  run->add_option("--config", config_path, "Run configuration JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--output-dir", output_dir, "Output directory (ARDL_OUTPUT_DIR takes precedence)");
  run->add_option("--threads", threads, "OpenMP threads, 0 = default")->default_val(0);
  run->add_flag("--serial", serial, "Use the single-threaded reference path");

  int k = 2, n = 58, reps = 20000, bootstrap = 200;
  std::uint64_t seed = 20051;
  double alpha = 0.05;
  std::string cse = "restricted_intercept";
  auto* crit = app.add_subcommand("critval", "Simulate bounds-test critical values");
  crit->add_option("--k", k, "Level regressors besides the dependent")->default_val(2);
  crit->add_option("--n", n, "Observations per simulated regression")->default_val(58);
  crit->add_option("--reps", reps, "Replications")->default_val(20000);
  crit->add_option("--seed", seed, "Seed")->default_val(20051);
  crit->add_option("--alpha", alpha, "Significance level: 0.01, 0.05 or 0.10")->default_val(0.05);
  crit->add_option("--case", cse, "restricted_intercept or unrestricted_intercept")->default_val(cse);
  crit->add_option("--bootstrap", bootstrap, "Bootstrap resamples for standard errors")->default_val(200);
  crit->add_flag("--serial", serial, "Use the single-threaded reference path");

  std::string country = "MEX", model = "M1", manifest;
  std::string inspect_config;
  auto* insp = app.add_subcommand("inspect", "Print the full fit for one country and model");
  insp->add_option("--country", country, "Country code")->default_val("MEX");
  insp->add_option("--model", model, "Model id M1..M6")->default_val("M1");
  insp->add_option("--manifest", manifest, "Dataset manifest")->default_val("data/synthetic/manifest.json");
  insp->add_option("--config", inspect_config, "Optional run configuration supplying other settings");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config_path, output_dir, threads, serial);
    if (*crit) return cmd_critval(k, n, reps, seed, alpha, cse, bootstrap, serial);
    if (*insp) {
      const bool explicit_manifest = insp->count("--manifest") > 0 || inspect_config.empty();
      return cmd_inspect(country, model, explicit_manifest ? manifest : "", inspect_config);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
