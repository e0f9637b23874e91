#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ardl/batch.hpp"

namespace ardl {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_fixed(double v, int decimals) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return format_fixed(v, 0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Long-run column labels of the full preset, so every row of a model shares a layout.
std::vector<std::string> coefficient_columns(const std::string& model) {
  std::vector<std::string> cols = {"const"};
  for (const auto& c : preset(model).regressor_columns()) cols.push_back(c);
  return cols;
}

const Coefficient* find_coefficient(const LongRunResult& lr, const std::string& name) {
  if (name == "const") return lr.beta0 ? &*lr.beta0 : nullptr;
  for (const auto& b : lr.betas) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

ordered_json mark_json(const SignificanceMark& m) {
  return {{"level", std::string(to_string(m.level))}, {"p_value", m.p_value}, {"degenerate", m.degenerate}};
}

ordered_json coef_json(const Coefficient& c) {
  return {{"name", c.name}, {"estimate", c.estimate}, {"std_error", c.std_error}, {"mark", mark_json(c.mark)}};
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json ols_json(const OlsFit& f) {
  ordered_json j;
  j["names"] = f.column_names;
  j["coefficients"] = std::vector<double>(f.coefficients.data(), f.coefficients.data() + f.coefficients.size());
  j["std_errors"] = std::vector<double>(f.std_errors.data(), f.std_errors.data() + f.std_errors.size());
  j["covariance"] = matrix_json(f.covariance);
  j["n_obs"] = f.n_obs;
  j["n_params"] = f.n_params;
  j["rss"] = f.rss;
  j["sigma2"] = f.sigma2;
  return j;
}

ordered_json row_json(const CountryRow& r) {
  ordered_json j;
  j["country"] = r.country;
  j["model"] = r.model;
  j["controls"] = r.spec.control_columns();
  j["controls_dropped"] = r.controls_dropped;
  j["succeeded"] = r.succeeded();
  if (r.selection) {
    j["lags"] = r.selection->order.to_string();
    j["selection"] = {{"sic", r.selection->sic},
                      {"n_obs", r.selection->n_obs},
                      {"evaluated", r.selection->evaluated},
                      {"skipped", r.selection->skipped},
                      {"staged", r.selection->staged}};
  } else {
    j["lags"] = nullptr;
  }
  if (r.fit) {
    j["sample"] = {{"first_year", r.fit->first_year}, {"last_year", r.fit->last_year}, {"n_obs", r.fit->ols.n_obs}};
    j["ardl"] = ols_json(r.fit->ols);
  }
  if (r.bounds) {
    ordered_json b;
    b["f_stat"] = r.bounds->f_stat;
    b["k"] = r.bounds->k;
    b["q"] = r.bounds->q;
    b["significance"] = std::string(to_string(r.bounds->significance_used));
    b["decision"] = std::string(to_string(r.bounds->decision));
    ordered_json crit = ordered_json::object();
    for (const auto& [sig, cb] : r.bounds->bounds) {
      crit[std::string(to_string(sig))] = {
          {"lower", cb.lower}, {"upper", cb.upper}, {"simulated", cb.simulated}, {"source", cb.source}};
    }
    b["critical_values"] = crit;
    j["bounds_test"] = b;
  } else {
    j["bounds_test"] = nullptr;
  }
  if (r.long_run) {
    ordered_json lr;
    lr["beta0"] = r.long_run->beta0 ? coef_json(*r.long_run->beta0) : ordered_json(nullptr);
    lr["betas"] = ordered_json::array();
    for (const auto& b : r.long_run->betas) lr["betas"].push_back(coef_json(b));
    lr["delta_dep"] = r.long_run->delta_dep;
    lr["shape"] = std::string(to_string(r.long_run->shape));
    j["long_run"] = lr;
  } else {
    j["long_run"] = nullptr;
  }
  j["turning_point"] = r.turning_point ? ordered_json(*r.turning_point) : ordered_json(nullptr);
  j["turning_point_in_sample"] =
      r.turning_point_in_sample ? ordered_json(*r.turning_point_in_sample) : ordered_json(nullptr);
  if (r.uecm) {
    const auto& u = *r.uecm;
    ordered_json uj;
    uj["phi"] = u.phi;
    uj["phi_mark"] = mark_json(u.phi_mark);
    uj["phi_t_ardl"] = u.phi_t_ardl;
    uj["phi_t_critical"] = u.phi_t_critical ? ordered_json(*u.phi_t_critical) : ordered_json(nullptr);
    uj["phi_robust_significant"] =
        u.phi_robust_significant ? ordered_json(*u.phi_robust_significant) : ordered_json(nullptr);
    uj["short_run"] = ordered_json::array();
    for (const auto& c : u.short_run) uj["short_run"].push_back(coef_json(c));
    uj["first_year"] = u.first_year;
    uj["ec_series"] = std::vector<double>(u.ec_series.data(), u.ec_series.data() + u.ec_series.size());
    uj["ols"] = ols_json(u.ols);
    j["uecm"] = uj;
  } else {
    j["uecm"] = nullptr;
  }
  j["warnings"] = r.warnings;
  return j;
}

std::string marked(double v, const SignificanceMark& m, int decimals) {
  return format_fixed(v, decimals) + std::string(superscript(m.level));
}

}  // namespace

std::string render_csv(const BatchResult& result, const std::string& model) {
  const auto coef_cols = coefficient_columns(model);
  std::vector<std::string> header = {"country", "model", "lags", "n_obs", "first_year", "last_year",
                                     "f_stat", "k", "lower", "upper", "bounds_source", "decision"};
  for (const auto& c : coef_cols) {
    header.push_back(c);
    header.push_back(c + "_se");
    header.push_back(c + "_mark");
  }
  for (const char* h : {"turning_point", "tp_in_sample", "shape", "phi", "phi_se", "phi_mark", "phi_t_ardl",
                        "phi_t_critical", "phi_robust", "warnings"}) {
    header.emplace_back(h);
  }

  std::ostringstream out;
  out << join(header, ",") << "\n";
  for (const CountryRow* r : result.rows_for(model)) {
    std::vector<std::string> f = {csv_field(r->country), r->model};
    f.push_back(r->selection ? csv_field(r->selection->order.to_string()) : "");
    f.push_back(r->fit ? std::to_string(r->fit->ols.n_obs) : "");
    f.push_back(r->fit ? std::to_string(r->fit->first_year) : "");
    f.push_back(r->fit ? std::to_string(r->fit->last_year) : "");
    if (r->bounds) {
      const auto& used = r->bounds->bounds.at(r->bounds->significance_used);
      f.push_back(num(r->bounds->f_stat));
      f.push_back(std::to_string(r->bounds->k));
      f.push_back(num(used.lower));
      f.push_back(num(used.upper));
      f.push_back(csv_field(used.source));
      f.push_back(std::string(to_string(r->bounds->decision)));
    } else {
      f.insert(f.end(), 6, "");
    }
    for (const auto& c : coef_cols) {
      const Coefficient* co = r->long_run ? find_coefficient(*r->long_run, c) : nullptr;
      if (co) {
        f.push_back(num(co->estimate));
        f.push_back(num(co->std_error));
        f.push_back(std::string(to_string(co->mark.level)));
      } else {
        f.insert(f.end(), 3, "");
      }
    }
    f.push_back(r->turning_point ? format_fixed(*r->turning_point, 2) : "");
    f.push_back(r->turning_point_in_sample ? (*r->turning_point_in_sample ? "true" : "false") : "");
    f.push_back(r->long_run && r->spec.income_order == 2 ? std::string(to_string(r->long_run->shape)) : "");
    if (r->uecm) {
      const auto& u = *r->uecm;
      const auto i = u.ols.coefficients.size() - 1;
      f.push_back(num(u.phi));
      f.push_back(num(u.ols.std_errors(i)));
      f.push_back(std::string(to_string(u.phi_mark.level)));
      f.push_back(num(u.phi_t_ardl));
      f.push_back(u.phi_t_critical ? num(*u.phi_t_critical) : "");
      f.push_back(u.phi_robust_significant ? (*u.phi_robust_significant ? "true" : "false") : "");
    } else {
      f.insert(f.end(), 6, "");
    }
    f.push_back(csv_field(join(r->warnings, "; ")));
    out << join(f, ",") << "\n";
  }
  return out.str();
}

std::string render_markdown(const BatchResult& result, const std::string& model) {
  const auto coef_cols = coefficient_columns(model);
  std::ostringstream out;
  out << "## " << model;
  const auto ctrl = preset(model).control_columns();
  if (!ctrl.empty()) out << " (controls: " << join(ctrl, ", ") << ")";
  out << "\n\n| Country | ARDL model | Bounds test | Conclusion |";
  for (std::size_t i = 0; i < coef_cols.size(); ++i) out << " b" << i << " |";
  out << " Turning point | EC(t-1) |\n|---|---|---|---|";
  for (std::size_t i = 0; i < coef_cols.size(); ++i) out << "---|";
  out << "---|---|\n";

  std::vector<std::string> notes;
  for (const CountryRow* r : result.rows_for(model)) {
    out << "| " << r->country << " | " << (r->selection ? r->selection->order.to_string() : "") << " | "
        << (r->bounds ? format_fixed(r->bounds->f_stat, 3) : "") << " | "
        << (r->bounds ? std::string(to_string(r->bounds->decision)) : "n/a") << " |";
    for (const auto& c : coef_cols) {
      const Coefficient* co = r->long_run ? find_coefficient(*r->long_run, c) : nullptr;
      out << ' ' << (co ? marked(co->estimate, co->mark, 4) : "") << " |";
    }
    std::string tp = r->turning_point ? format_fixed(*r->turning_point, 2) : "";
    if (r->turning_point_in_sample && !*r->turning_point_in_sample) tp += " (out of sample)";
    out << ' ' << tp << " | " << (r->uecm ? marked(r->uecm->phi, r->uecm->phi_mark, 4) : "") << " |\n";
    for (const auto& w : r->warnings) notes.push_back(r->country + ": " + w);
  }
  out << "\nColumns b0.. are the long-run intercept then " << join(preset(model).regressor_columns(), ", ")
      << ".\na) significant parameter at 1%, b) at 5%, c) at 10%.\n";
  if (!notes.empty()) {
    out << "\nWarnings:\n\n";
    for (const auto& n : notes) out << "- " << n << "\n";
  }
  return out.str();
}

std::string render_json(const BatchResult& result, const RunConfig& cfg) {
  ordered_json j;
  j["schema"] = "ardl-batch/1";
  ordered_json c;
  c["countries"] = cfg.countries;
  c["models"] = cfg.models;
  c["max_lag"] = cfg.max_lag;
  c["significance"] = std::string(to_string(cfg.significance));
  c["min_window"] = cfg.min_window;
  c["grid_budget"] = cfg.grid_budget;
  c["simulate_missing_bounds"] = cfg.simulate_missing_bounds;
  c["mc_replications"] = cfg.mc_replications;
  c["mc_bootstrap"] = cfg.mc_bootstrap;
  c["seed"] = cfg.seed;
  j["config"] = c;
  j["rows"] = ordered_json::array();
  for (const auto& r : result.rows) j["rows"].push_back(row_json(r));
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> render(const BatchResult& result, const RunConfig& cfg) {
  if (result.rows.empty()) throw std::invalid_argument("render: no rows");
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + p.string());
    written.push_back(p);
  };
  for (const auto& model : cfg.models) {
    if (cfg.formats.contains(OutputFormat::Csv)) write(cfg.output_dir / (model + ".csv"), render_csv(result, model));
    if (cfg.formats.contains(OutputFormat::Markdown)) {
      write(cfg.output_dir / (model + ".md"), render_markdown(result, model));
    }
  }
  if (cfg.formats.contains(OutputFormat::Json)) write(cfg.output_dir / "results.json", render_json(result, cfg));
  return written;
}

}  // namespace ardl
