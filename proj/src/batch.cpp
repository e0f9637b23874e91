#include "ardl/batch.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <omp.h>

#include "ardl/errors.hpp"

namespace ardl {

using nlohmann::json;

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = {"M1", "M2", "M3", "M4", "M5", "M6"};
  return ids;
}

ModelSpec preset(std::string_view model_id) {
  ModelSpec spec;
  auto add = [&](std::initializer_list<const char*> names, TransformKind t) {
    for (const char* n : names) spec.controls.push_back({n, t});
  };
  if (model_id == "M1") {
  } else if (model_id == "M2") {
    add({"x1", "x2", "x3"}, TransformKind::Ln);
  } else if (model_id == "M3") {
    add({"x4", "x5"}, TransformKind::Identity);
  } else if (model_id == "M4") {
    add({"x6", "x7", "x8", "x9"}, TransformKind::Identity);
  } else if (model_id == "M5") {
    add({"x10", "x5", "x11"}, TransformKind::Identity);
  } else if (model_id == "M6") {
    add({"x12", "x13_electricity", "x14_gasoline", "x15_fuel"}, TransformKind::Identity);
  } else {
    throw ConfigError("unknown model id '" + std::string(model_id) + "' (expected M1..M6)");
  }
  return spec;
}

std::string_view bounds_variant(std::string_view model_id) { return model_id == "M5" ? "M5" : ""; }

const std::vector<std::string>& default_countries() {
  static const std::vector<std::string> codes = {"ARG",  "BOL", "BRA",   "CHI", "COL", "COS", "CUBA",
                                                 "R.DOM", "ECU", "ELSAL", "GUA", "HAI", "HON", "JAM",
                                                 "MEX",  "NIC", "PAN",   "PAR", "PERU", "URU", "VEN"};
  return codes;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  if (text == "md" || text == "markdown") return OutputFormat::Markdown;
  throw ConfigError("unknown output format '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Markdown: return "md";
  }
  return "csv";
}

RunConfig RunConfig::parse(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "manifest",   "countries",   "models",    "max_lag",        "significance",
      "output_dir", "formats",     "min_window", "grid_budget",   "simulate_missing_bounds",
      "mc_replications", "mc_bootstrap", "seed", "threads"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto resolve = [&](const std::filesystem::path& p) { return p.is_absolute() || base_dir.empty() ? p : base_dir / p; };

  RunConfig cfg;
  try {
    if (!j.contains("manifest")) throw ConfigError("config needs \"manifest\"");
    cfg.manifest = resolve(j.at("manifest").get<std::string>());
    if (j.contains("countries")) cfg.countries = j.at("countries").get<std::vector<std::string>>();
    if (j.contains("models")) cfg.models = j.at("models").get<std::vector<std::string>>();
    if (j.contains("max_lag")) cfg.max_lag = j.at("max_lag").get<int>();
    if (j.contains("significance")) {
      try {
        cfg.significance = parse_significance(j.at("significance").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    if (j.contains("output_dir")) cfg.output_dir = resolve(j.at("output_dir").get<std::string>());
    if (j.contains("formats")) {
      cfg.formats.clear();
      for (const auto& f : j.at("formats")) cfg.formats.insert(parse_format(f.get<std::string>()));
    }
    if (j.contains("min_window")) cfg.min_window = j.at("min_window").get<int>();
    if (j.contains("grid_budget")) cfg.grid_budget = j.at("grid_budget").get<long long>();
    if (j.contains("simulate_missing_bounds")) cfg.simulate_missing_bounds = j.at("simulate_missing_bounds").get<bool>();
    if (j.contains("mc_replications")) cfg.mc_replications = j.at("mc_replications").get<int>();
    if (j.contains("mc_bootstrap")) cfg.mc_bootstrap = j.at("mc_bootstrap").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = parse(buf.str(), path.parent_path());
  apply_env_overrides(cfg);
  return cfg;
}

void RunConfig::validate() const {
  if (countries.empty()) throw ConfigError("config lists no countries");
  if (models.empty()) throw ConfigError("config lists no models");
  for (const auto& m : models) preset(m);
  if (std::set<std::string>(models.begin(), models.end()).size() != models.size()) {
    throw ConfigError("duplicate model id in config");
  }
  if (std::set<std::string>(countries.begin(), countries.end()).size() != countries.size()) {
    throw ConfigError("duplicate country in config");
  }
  if (max_lag < 1 || max_lag > 8) throw ConfigError("max_lag must be in 1..8");
  if (min_window < 5) throw ConfigError("min_window must be at least 5");
  if (formats.empty()) throw ConfigError("config lists no output formats");
  if (grid_budget < 1) throw ConfigError("grid_budget must be positive");
  if (threads < 0) throw ConfigError("threads must be non-negative");
  if (simulate_missing_bounds) {
    if (mc_replications < 1000) throw ConfigError("mc_replications must be at least 1000");
    if (mc_bootstrap < 2) throw ConfigError("mc_bootstrap must be at least 2");
  }
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) cfg.output_dir = dir;
}

int BatchResult::succeeded() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const CountryRow& r) { return r.succeeded(); }));
}

std::vector<const CountryRow*> BatchResult::rows_for(const std::string& model) const {
  std::vector<const CountryRow*> out;
  for (const auto& r : rows) {
    if (r.model == model) out.push_back(&r);
  }
  return out;
}

CountryRow run_cell(const Dataset& data, const std::string& model_id, const RunConfig& cfg,
                    const CriticalValueProvider& provider, const std::set<std::string>& excluded) {
  CountryRow row;
  row.country = data.country();
  row.model = model_id;
  try {
    row.spec = preset(model_id);
    std::erase_if(row.spec.controls, [&](const ControlTerm& c) {
      if (!excluded.contains(c.name)) return false;
      row.controls_dropped.push_back(c.name);
      row.warnings.push_back("control " + c.name + " excluded for " + row.country + " by manifest");
      return true;
    });

    const AlignedFrame frame = prepare_frame(data, row.spec, AlignOptions{cfg.min_window});
    for (const auto& note : frame.notes) row.warnings.push_back(note);

    LagSearchOptions search{cfg.max_lag, cfg.grid_budget};
    row.selection = select_lags(frame, row.spec, search);
    for (const auto& w : row.selection->warnings) row.warnings.push_back(w);

    row.fit = fit_ardl(frame, row.spec, row.selection->order, std::max(cfg.max_lag, 1));
    const bool full_spec = row.controls_dropped.empty();
    row.bounds = bounds_test(*row.fit, provider, cfg.significance, full_spec ? bounds_variant(model_id) : "");
    for (const auto& [sig, b] : row.bounds->bounds) {
      if (b.simulated && sig == cfg.significance) row.warnings.push_back("decision uses simulated bounds: " + b.source);
    }
    if (!row.cointegrated()) return row;

    row.long_run = long_run(*row.fit, cfg.significance);
    row.turning_point = row.long_run->turning_point;
    if (row.turning_point) {
      row.turning_point_in_sample = in_sample(*row.turning_point, frame, row.spec.income_columns().front());
    }
    row.uecm = estimate_uecm(frame, *row.fit, *row.long_run, &provider, cfg.significance);
    for (const auto& w : row.uecm->warnings) row.warnings.push_back(w);
  } catch (const std::exception& e) {
    row.warnings.push_back(e.what());
  }
  return row;
}

namespace {

BatchResult run_impl(const RunConfig& cfg, bool parallel) {
  cfg.validate();
  DataStore store(Manifest::load(cfg.manifest));
  for (const auto& c : cfg.countries) {
    if (!store.manifest().countries.contains(c)) {
      throw ConfigError("country " + c + " is not in the manifest");
    }
  }

  CriticalValueOptions cv;
  cv.allow_simulation = cfg.simulate_missing_bounds;
  cv.replications = cfg.mc_replications;
  cv.bootstrap_resamples = cfg.mc_bootstrap;
  cv.seed = cfg.seed;
  const CriticalValueProvider provider(cv);

  // DataStore caches lazily and is not thread-safe: load everything up front.
  std::vector<std::optional<Dataset>> data;
  std::vector<std::string> load_errors(cfg.countries.size());
  for (std::size_t i = 0; i < cfg.countries.size(); ++i) {
    try {
      data.emplace_back(store.dataset(cfg.countries[i]));
    } catch (const std::exception& e) {
      data.emplace_back(std::nullopt);
      load_errors[i] = e.what();
    }
  }

  const std::size_t nc = cfg.countries.size();
  const std::size_t cells = nc * cfg.models.size();
  BatchResult result;
  result.rows.resize(cells);
  auto one = [&](std::size_t cell) {
    const std::size_t m = cell / nc;
    const std::size_t c = cell % nc;
    const auto& model = cfg.models[m];
    if (!data[c]) {
      CountryRow row;
      row.country = cfg.countries[c];
      row.model = model;
      row.spec = preset(model);
      row.warnings.push_back(load_errors[c]);
      result.rows[cell] = std::move(row);
      return;
    }
    result.rows[cell] = run_cell(*data[c], model, cfg, provider, store.manifest().excluded(cfg.countries[c], model));
  };

  if (parallel) {
    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t cell = 0; cell < static_cast<std::ptrdiff_t>(cells); ++cell) {
      one(static_cast<std::size_t>(cell));
    }
  } else {
    for (std::size_t cell = 0; cell < cells; ++cell) one(cell);
  }
  return result;
}

}  // namespace

BatchResult run_batch(const RunConfig& cfg) { return run_impl(cfg, true); }

BatchResult run_batch_serial(const RunConfig& cfg) { return run_impl(cfg, false); }

}  // namespace ardl
