#include <benchmark/benchmark.h>

#include "integralgap/certifier.hpp"
#include "integralgap/constructions.hpp"
#include "integralgap/diophantine.hpp"
#include "integralgap/volume.hpp"

using namespace integralgap;

static void BM_MonteCarloBall(benchmark::State& state) {
  const PNormSpace space(static_cast<int>(state.range(0)), 3.0);
  const Component ball{Vec(space.dimension(), 0.0), 1.0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_volume(space, ball, 100'000, 7).value);
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_MonteCarloBall)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ExactArea(benchmark::State& state) {
  const auto arr = pgon_search_k({5, PNormSpace(2, 2.0), 0.05, {}}, 5).arrangement;
  for (auto _ : state) benchmark::DoNotOptimize(exact_area_2d(arr).value);
}
BENCHMARK(BM_ExactArea)->Unit(benchmark::kMicrosecond);

static void BM_FindScaling(benchmark::State& state) {
  const auto basis = sine_basis(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_scaling(basis, 0.1, 1'000'000).k);
}
BENCHMARK(BM_FindScaling)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMicrosecond);

static void BM_CertifyTwoComponent(benchmark::State& state) {
  const auto arr = two_component({2, PNormSpace(2, 2.0), 0.1, {}});
  CertifyOptions opt;
  opt.line_samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(certify(arr, opt).pass);
}
BENCHMARK(BM_CertifyTwoComponent)->Arg(1000)->Arg(10'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
