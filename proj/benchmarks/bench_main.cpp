#include <benchmark/benchmark.h>

#include "channel/coefficients.hpp"
#include "channel/distribution.hpp"
#include "channel/pairing.hpp"
#include "channel/profiles.hpp"
#include "channel/projection.hpp"
#include "channel/special_solution.hpp"
#include "channel/spectral.hpp"

namespace {

chan::RadialFn bump_fn() { return chan::to_fn(chan::RadialProfile::bump(0.5, 2.5)); }

void BM_GramInverseH1(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chan::gram_inverse_H1(d));
}
BENCHMARK(BM_GramInverseH1)->Arg(9)->Arg(21)->Arg(41);

void BM_VerifyIdentities(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chan::verify_identities(d));
}
BENCHMARK(BM_VerifyIdentities)->Arg(21)->Arg(41);

void BM_ClosedFtPsi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chan::closed_ft_psi(n));
}
BENCHMARK(BM_ClosedFtPsi)->Arg(5)->Arg(20);

void BM_ProjectionPair(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto f = bump_fn();
  for (auto _ : state) benchmark::DoNotOptimize(chan::proj_norm_pair(f, f, d, 1.0));
}
BENCHMARK(BM_ProjectionPair)->Arg(5)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_AsymptoticPairing(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto g = bump_fn();
  for (auto _ : state) benchmark::DoNotOptimize(chan::asymptotic_energy_pairing(d, 1.0, g, chan::DataKind::G));
}
BENCHMARK(BM_AsymptoticPairing)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SpectralSetup(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto g = bump_fn();
  for (auto _ : state) {
    const auto src = chan::physical_source(chan::zero_fn(), g, d);
    benchmark::DoNotOptimize(chan::spectral_data(src, 20.0));
  }
}
BENCHMARK(BM_SpectralSetup)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const auto src = chan::physical_source(chan::zero_fn(), bump_fn(), 5);
  const auto S = chan::spectral_data(src, 20.0);
  double r = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chan::evolve(S, 3.0, r));
    r = r < 10 ? r + 0.01 : 1.0;
  }
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMicrosecond);

void BM_SpecialExteriorEnergy(benchmark::State& state) {
  const auto sol = chan::special_solution(9, 2, chan::SpecialKind::G);
  for (auto _ : state) benchmark::DoNotOptimize(sol.exterior_energy(1.0, 5.0));
}
BENCHMARK(BM_SpecialExteriorEnergy)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
