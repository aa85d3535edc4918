#include <benchmark/benchmark.h>

#include <vector>

#include "effdim/dimension.hpp"
#include "effdim/experiments.hpp"
#include "effdim/krr.hpp"
#include "effdim/random.hpp"
#include "effdim/spectral.hpp"
#include "effdim/synth.hpp"

namespace {

using namespace effdim;

void BM_EffectiveDimensionExact(benchmark::State& state) {
  const double lambda = 1.0 / static_cast<double>(state.range(0));
  const auto spectrum = spectral::polynomial_spectrum(0.1, 2.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dimension::effective_dimension_exact(spectrum, lambda).value);
}
BENCHMARK(BM_EffectiveDimensionExact)->Arg(10)->Arg(1000)->Arg(1000000);

void BM_EffectiveDimensionSlowDecay(benchmark::State& state) {
  const auto spectrum = spectral::polynomial_spectrum(1.0, 1.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dimension::effective_dimension_exact(spectrum, 1e-6).value);
}
BENCHMARK(BM_EffectiveDimensionSlowDecay);

std::vector<double> uniform_inputs(std::size_t n, std::uint64_t seed) {
  RandomStream stream(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = stream.uniform01();
  return xs;
}

void BM_SpectralGram(benchmark::State& state) {
  const auto model = synth::build_model(1.0, 2.0, 512);
  const auto xs = uniform_inputs(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(model.gram(xs).data());
}
BENCHMARK(BM_SpectralGram)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_KrrFit(benchmark::State& state) {
  const auto model = synth::build_model(1.0, 2.0, 512);
  const auto xs = uniform_inputs(static_cast<std::size_t>(state.range(0)), 2);
  const krr::Matrix k = model.gram(xs);
  const krr::Vector y = krr::Vector::Ones(k.rows());
  for (auto _ : state) benchmark::DoNotOptimize(krr::krr_fit(k, y, 1e-3).data());
}
BENCHMARK(BM_KrrFit)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SweepCell(benchmark::State& state) {
  experiments::SweepConfig config;
  config.ell_grid = {static_cast<std::size_t>(state.range(0))};
  config.seed = 3;
  const auto model = synth::build_model(1.0, 2.0, config.model.n_modes);
  const auto target = synth::make_target(model, 2.0, 1.0, config.model.delta, experiments::target_seed(3));
  std::size_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        experiments::run_cell(config, model, target, config.ell_grid.front(), rep++).excess_risk);
  }
}
BENCHMARK(BM_SweepCell)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
