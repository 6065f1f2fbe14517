#include <benchmark/benchmark.h>

#include "fdlab/data.hpp"
#include "fdlab/evolve.hpp"
#include "fdlab/gauge.hpp"
#include "fdlab/mollifier.hpp"
#include "fdlab/spectral.hpp"

using namespace fdlab;

namespace {

Grid grid_for(const benchmark::State& state) { return Grid(16.0, static_cast<std::size_t>(state.range(0))); }

SystemSpec shro() { return builtin_4shro(1.0, {1, 1, 1, 1, 1, 1}); }

void BM_SpectrumRoundTrip(benchmark::State& state) {
  const SpectralField q = gaussian_data(grid_for(state), 1, 0.1, {1.0});
  for (auto _ : state) benchmark::DoNotOptimize(q.to_spectrum().to_physical());
}
BENCHMARK(BM_SpectrumRoundTrip)->RangeMultiplier(2)->Range(128, 2048);

void BM_NonlinearTerm4shro(benchmark::State& state) {
  const Grid g = grid_for(state);
  const SystemSpec sys = shro();
  const Evolver ev(sys, LinearSymbol(sys, g, 0.0), 1e-4);
  const Spectrum s = gaussian_data(g, 1, 0.1, {1.0}).to_spectrum();
  for (auto _ : state) benchmark::DoNotOptimize(ev.nonlinear_term(s));
}
BENCHMARK(BM_NonlinearTerm4shro)->RangeMultiplier(2)->Range(128, 2048);

void BM_NonlinearTermGrassmannian(benchmark::State& state) {
  const Grid g = grid_for(state);
  const SystemSpec sys = builtin_grassmannian(1.0, 1.0, 0.5, 1, 3);
  const Evolver ev(sys, LinearSymbol(sys, g, 0.0), 1e-4);
  const Spectrum s = gaussian_data(g, sys.n(), 0.1, {1.0, -1.0}).to_spectrum();
  for (auto _ : state) benchmark::DoNotOptimize(ev.nonlinear_term(s));
}
BENCHMARK(BM_NonlinearTermGrassmannian)->RangeMultiplier(2)->Range(128, 1024);

void BM_EtdStep4shro(benchmark::State& state) {
  const Grid g = grid_for(state);
  const SystemSpec sys = shro();
  const Evolver ev(sys, LinearSymbol(sys, g, 0.0), 1e-4);
  Spectrum s = gaussian_data(g, 1, 0.1, {1.0}).to_spectrum();
  double t = 0.0;
  for (auto _ : state) {
    s = ev.advance(s, t);
    t += 1e-4;
  }
}
BENCHMARK(BM_EtdStep4shro)->RangeMultiplier(2)->Range(128, 2048);

void BM_Mollify(benchmark::State& state) {
  const SpectralField q = gaussian_data(grid_for(state), 1, 0.1, {10.0});
  for (auto _ : state) benchmark::DoNotOptimize(mollify(q, 0.05));
}
BENCHMARK(BM_Mollify)->RangeMultiplier(2)->Range(128, 2048);

void BM_GaugeEnergy(benchmark::State& state) {
  const SpectralField q = gaussian_data(grid_for(state), 1, 0.1, {1.0});
  GaugeConfig cfg;
  cfg.a = {1.0};
  for (auto _ : state) benchmark::DoNotOptimize(energy(q, cfg));
}
BENCHMARK(BM_GaugeEnergy)->RangeMultiplier(2)->Range(128, 2048);

}  // namespace

BENCHMARK_MAIN();
