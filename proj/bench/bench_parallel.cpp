// OpenMP kernels against their serial references.

#include <random>

#include <benchmark/benchmark.h>

#include "ardl/ardl_model.hpp"
#include "ardl/critval_mc.hpp"

namespace {

ardl::ModelSpec controls_spec() {
  ardl::ModelSpec s;
  s.controls = {{"x1", ardl::TransformKind::Identity}, {"x2", ardl::TransformKind::Identity}};
  return s;
}

ardl::AlignedFrame walk_frame(const ardl::ModelSpec& spec, int T) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  ardl::AlignedFrame f;
  f.first_year = 1960;
  f.last_year = 1960 + T - 1;
  f.names = spec.level_columns();
  f.data.resize(T, static_cast<Eigen::Index>(f.names.size()));
  for (Eigen::Index c = 0; c < f.data.cols(); ++c) {
    double v = 0.0;
    for (int t = 0; t < T; ++t) f.data(t, c) = v += z(rng);
  }
  return f;
}

template <bool Parallel>
void BM_SelectLags(benchmark::State& state) {
  const auto spec = controls_spec();
  const auto frame = walk_frame(spec, 58);
  const ardl::LagSearchOptions opt{static_cast<int>(state.range(0)), 1'000'000};
  for (auto _ : state) {
    auto sel = Parallel ? ardl::select_lags(frame, spec, opt) : ardl::select_lags_serial(frame, spec, opt);
    benchmark::DoNotOptimize(sel.sic);
  }
  state.counters["candidates"] = static_cast<double>(ardl::lag_grid_size(spec, opt.max_lag));
}

template <bool Parallel>
void BM_SimulateBounds(benchmark::State& state) {
  ardl::McConfig cfg;
  cfg.replications = static_cast<int>(state.range(0));
  cfg.bootstrap_resamples = 50;
  for (auto _ : state) {
    auto b = Parallel ? ardl::simulate_bounds(cfg) : ardl::simulate_bounds_serial(cfg);
    benchmark::DoNotOptimize(b.levels[1].upper.value);
  }
}

}  // namespace

BENCHMARK(BM_SelectLags<false>)->Name("select_lags/serial")->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelectLags<true>)->Name("select_lags/openmp")->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateBounds<false>)->Name("simulate_bounds/serial")->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateBounds<true>)->Name("simulate_bounds/openmp")->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
