#include <benchmark/benchmark.h>

#include "arhygarch/inference.hpp"
#include "arhygarch/lagpoly.hpp"
#include "arhygarch/model.hpp"
#include "arhygarch/simulate.hpp"

namespace {

arhyg::SimulatedSeries make_path(std::size_t T, std::size_t J) {
  arhyg::SimConfig cfg;
  cfg.intercept = arhyg::InterceptSpec::fourier(T);
  cfg.sample_size = T;
  cfg.burn_in = 1000;
  cfg.truncation = J;
  cfg.seed = 7;
  return arhyg::simulate(cfg);
}

void BM_HygarchWeights(benchmark::State& state) {
  const auto J = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(arhyg::hygarch_weights(0.35, 0.4, 0.1, 0.9, J));
  }
}
BENCHMARK(BM_HygarchWeights)->Arg(1000)->Arg(3000);

void BM_FilterVolatility(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const auto path = make_path(T, T);
  const arhyg::SeriesPair series{path.r, path.x};
  const arhyg::ModelParams params;
  const auto spec = arhyg::InterceptSpec::fourier(T);
  for (auto _ : state) {
    benchmark::DoNotOptimize(arhyg::filter_volatility(series, params, spec, T));
  }
}
BENCHMARK(BM_FilterVolatility)->Arg(1000)->Arg(3000);

void BM_LogLik(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const auto path = make_path(T, T);
  const arhyg::SeriesPair series{path.r, path.x};
  const arhyg::ModelParams params;
  const auto spec = arhyg::InterceptSpec::fourier(T);
  for (auto _ : state) {
    benchmark::DoNotOptimize(arhyg::loglik(series, params, spec, T));
  }
}
BENCHMARK(BM_LogLik)->Arg(1000)->Arg(3000);

void BM_Simulate(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_path(T, T));
  }
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(3000);

void BM_StabilityCheck(benchmark::State& state) {
  const arhyg::ModelParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(arhyg::stability_check(params, 3000));
  }
}
BENCHMARK(BM_StabilityCheck);

}  // namespace

BENCHMARK_MAIN();
