#include "ardl/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ardl/errors.hpp"

namespace ardl {

using nlohmann::json;

const std::vector<std::string>& canonical_variables() {
  static const std::vector<std::string> names = {
      "e",  "y",  "x1",  "x2",  "x3",  "x4",  "x5",  "x6",  "x7",
      "x8", "x9", "x10", "x11", "x12", "x13_electricity", "x14_gasoline", "x15_fuel"};
  return names;
}

Manifest Manifest::parse(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  Manifest m;
  m.base_dir = base_dir;
  try {
    m.layout = parse_layout(j.value("layout", std::string("wide")));
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  if (m.layout == CsvLayout::Long) {
    if (!j.contains("file")) throw ConfigError("long-layout manifest needs a top-level \"file\"");
    m.long_file = base_dir / j.at("file").get<std::string>();
  }
  if (!j.contains("countries") || !j.at("countries").is_object()) {
    throw ConfigError("manifest needs a \"countries\" object");
  }
  for (const auto& [code, entry] : j.at("countries").items()) {
    CountryEntry ce;
    if (entry.contains("file")) {
      ce.file = base_dir / entry.at("file").get<std::string>();
    } else if (m.layout == CsvLayout::Wide) {
      throw ConfigError("country " + code + " has no \"file\" in a wide-layout manifest");
    }
    if (entry.contains("exclude")) {
      for (const auto& [model, vars] : entry.at("exclude").items()) {
        ce.exclude[model] = vars.get<std::set<std::string>>();
      }
    }
    m.countries.emplace(code, std::move(ce));
  }
  if (j.contains("aliases")) {
    m.aliases = j.at("aliases").get<std::map<std::string, std::string>>();
  }
  return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.parent_path());
}

std::set<std::string> Manifest::excluded(const std::string& country, const std::string& model_id) const {
  auto c = countries.find(country);
  if (c == countries.end()) return {};
  auto m = c->second.exclude.find(model_id);
  return m == c->second.exclude.end() ? std::set<std::string>{} : m->second;
}

Dataset DataStore::apply_aliases(const Dataset& raw) const {
  Dataset out(raw.country());
  for (const auto& [name, s] : raw.series()) {
    auto it = manifest_.aliases.find(name);
    out.add(it == manifest_.aliases.end() ? s : s.renamed(it->second));
  }
  return out;
}

Dataset DataStore::dataset(const std::string& country, LoadReport* report) const {
  auto entry = manifest_.countries.find(country);
  if (entry == manifest_.countries.end()) throw DataError("country " + country + " is not in the manifest");

  if (manifest_.layout == CsvLayout::Wide) {
    auto loaded = load_csv(entry->second.file, CsvLayout::Wide, country);
    if (report) *report = loaded.report;
    return apply_aliases(loaded.datasets.front());
  }
  if (!long_cache_) long_cache_ = load_csv(manifest_.long_file, CsvLayout::Long);
  for (const auto& ds : long_cache_->datasets) {
    if (ds.country() == country) {
      if (report) *report = long_cache_->report;
      return apply_aliases(ds);
    }
  }
  throw DataError("country " + country + " has no rows in " + manifest_.long_file.string());
}

}  // namespace ardl
