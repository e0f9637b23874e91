// Writes the bundled synthetic 21-country panel (wide CSV per country) and its manifest.
//
// Usage: gen_synthetic <output_dir> [seed]

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ardl/batch.hpp"
#include "ardl/csv_io.hpp"
#include "ardl/random.hpp"

namespace {

constexpr int kFirstYear = 1960;
constexpr int kLastYear = 2018;
constexpr int kYears = kLastYear - kFirstYear + 1;

using Column = std::vector<std::optional<double>>;

Column window(const std::vector<double>& v, int from, int to) {
  Column c(kYears);
  for (int t = 0; t < kYears; ++t) {
    const int year = kFirstYear + t;
    if (year >= from && year <= to) c[static_cast<std::size_t>(t)] = v[static_cast<std::size_t>(t)];
  }
  return c;
}

std::vector<double> walk(ardl::Philox& rng, double start, double drift, double sd) {
  std::vector<double> v(kYears);
  v[0] = start;
  for (int t = 1; t < kYears; ++t) v[static_cast<std::size_t>(t)] = v[static_cast<std::size_t>(t) - 1] + drift + sd * rng.normal();
  return v;
}

std::vector<double> bounded_walk(ardl::Philox& rng, double start, double sd, double lo, double hi) {
  auto v = walk(rng, start, 0.0, sd);
  for (auto& x : v) x = std::clamp(x, lo, hi);
  return v;
}

ardl::Dataset country(const std::string& code, std::size_t index, std::uint64_t seed, bool planted) {
  ardl::Philox rng(seed, static_cast<std::uint32_t>(index), 0);
  ardl::Dataset d(code);

  // Income: log random walk with drift.
  const double ly0 = std::log(1500.0 + 7500.0 * rng.uniform());
  const double growth = 0.005 + 0.025 * rng.uniform();
  const auto ly = walk(rng, ly0, growth, 0.03);

  std::vector<double> le(kYears);
  if (planted) {
    // Error correction towards a log-quadratic curve peaking mid-sample.
    const auto [mn, mx] = std::minmax_element(ly.begin(), ly.end() - 1);
    const double peak = 0.5 * (*mn + *mx);
    const double b2 = -1.5;
    const double b1 = -2.0 * b2 * peak;
    const double b0 = 0.5 - (b1 * peak + b2 * peak * peak);
    auto curve = [&](double x) { return b0 + b1 * x + b2 * x * x; };
    const double phi = -0.6;
    le[0] = curve(ly[0]);
    for (int t = 1; t < kYears; ++t) {
      const auto i = static_cast<std::size_t>(t);
      le[i] = le[i - 1] + phi * (le[i - 1] - curve(ly[i - 1])) + 0.3 * (ly[i] - ly[i - 1]) + 0.03 * rng.normal();
    }
  } else {
    le[0] = std::log(0.3 + 3.0 * rng.uniform());
    for (int t = 1; t < kYears; ++t) {
      const auto i = static_cast<std::size_t>(t);
      le[i] = le[i - 1] + 0.8 * (ly[i] - ly[i - 1]) + 0.04 * rng.normal();
    }
  }
  std::vector<double> e(kYears), y(kYears);
  for (int t = 0; t < kYears; ++t) {
    const auto i = static_cast<std::size_t>(t);
    e[i] = std::exp(le[i]);
    y[i] = std::exp(ly[i]);
  }
  d.add(ardl::TimeSeries("co2_pc", kFirstYear, window(e, 1960, 2017)));
  d.add(ardl::TimeSeries("gdp_pc", kFirstYear, window(y, 1960, 2017)));

  // Value added by sector, constant dollars.
  const double shares[] = {0.12, 0.33, 0.55};
  for (int s = 0; s < 3; ++s) {
    const auto dev = walk(rng, 0.0, 0.0, 0.04);
    std::vector<double> v(kYears);
    for (int t = 0; t < kYears; ++t) {
      const auto i = static_cast<std::size_t>(t);
      v[i] = 1e7 * shares[s] * std::exp(ly[i] + dev[i]);
    }
    d.add(ardl::TimeSeries("x" + std::to_string(s + 1), kFirstYear, window(v, 1970, 2017)));
  }
  if (code != "CUBA") {
    d.add(ardl::TimeSeries("x4", kFirstYear, window(bounded_walk(rng, 40.0 + 40.0 * rng.uniform(), 2.5, 5.0, 98.0), 1963, 2017)));
  }
  {
    const double d0 = std::log(5.0 + 60.0 * rng.uniform());
    const auto ld = walk(rng, d0, 0.02, 0.01);
    std::vector<double> v(kYears);
    for (int t = 0; t < kYears; ++t) v[static_cast<std::size_t>(t)] = std::exp(ld[static_cast<std::size_t>(t)]);
    d.add(ardl::TimeSeries("x5", kFirstYear, window(v, 1960, 2017)));
  }
  if (code != "CUBA") {
    std::vector<double> fdi(kYears);
    double prev = 1.5;
    for (auto& f : fdi) f = prev = 1.5 + 0.6 * (prev - 1.5) + 1.2 * rng.normal();
    d.add(ardl::TimeSeries("x6", kFirstYear, window(fdi, 1970, 2018)));
  }
  d.add(ardl::TimeSeries("x7", kFirstYear, window(bounded_walk(rng, 15.0 + 20.0 * rng.uniform(), 1.5, 3.0, 90.0), 1960, 2018)));
  d.add(ardl::TimeSeries("x8", kFirstYear, window(bounded_walk(rng, 15.0 + 20.0 * rng.uniform(), 1.5, 3.0, 90.0), 1960, 2018)));
  d.add(ardl::TimeSeries("x9", kFirstYear, window(bounded_walk(rng, 20.0 + 40.0 * rng.uniform(), 0.6, 1.0, 95.0), 1970, 2018)));
  {
    const auto lr = walk(rng, std::log(100.0 + 900.0 * rng.uniform()), 0.03, 0.08);
    std::vector<double> v(kYears);
    for (int t = 0; t < kYears; ++t) v[static_cast<std::size_t>(t)] = std::exp(lr[static_cast<std::size_t>(t)]);
    d.add(ardl::TimeSeries("x10", kFirstYear, window(v, 1970, 2017)));
  }
  {
    const double start = 35.0 + 30.0 * rng.uniform();
    auto rural = walk(rng, start, -0.5, 0.4);
    for (auto& r : rural) r = std::clamp(r, 2.0, 95.0);
    d.add(ardl::TimeSeries("x11", kFirstYear, window(rural, 1970, 2018)));
  }
  const char* energy[] = {"x12", "x13_electricity", "x14_gasoline", "x15_fuel"};
  for (const char* name : energy) {
    const double a = std::log(0.02 + 0.2 * rng.uniform());
    const auto dev = walk(rng, 0.0, 0.0, 0.05);
    std::vector<double> v(kYears);
    for (int t = 0; t < kYears; ++t) {
      const auto i = static_cast<std::size_t>(t);
      v[i] = std::exp(a + 0.7 * (ly[i] - ly0) + dev[i]);
    }
    d.add(ardl::TimeSeries(name, kFirstYear, window(v, 1970, 2018)));
  }
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: gen_synthetic <output_dir> [seed]\n";
    return 2;
  }
  const std::filesystem::path out = argv[1];
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 1960;
  std::filesystem::create_directories(out);

  const std::set<std::string> planted = {"COS", "ECU", "MEX"};
  nlohmann::ordered_json manifest;
  manifest["layout"] = "wide";
  manifest["aliases"] = {{"co2_pc", "e"}, {"gdp_pc", "y"}};
  manifest["countries"] = nlohmann::ordered_json::object();

  const auto& codes = ardl::default_countries();
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const auto& code = codes[i];
    const auto d = country(code, i, seed, planted.contains(code));
    const std::string file = code + ".csv";
    ardl::write_csv(out / file, {d}, ardl::CsvLayout::Wide);
    nlohmann::ordered_json entry = {{"file", file}};
    if (code == "CUBA") entry["exclude"] = {{"M3", {"x4"}}, {"M4", {"x6"}}};
    manifest["countries"][code] = entry;
  }
  std::ofstream(out / "manifest.json") << manifest.dump(2) << "\n";
  std::cout << "wrote " << codes.size() << " countries to " << out.string() << "\n";
  return 0;
}
