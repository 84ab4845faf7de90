#include <benchmark/benchmark.h>

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/functional.hpp"
#include "nlswap/scenario.hpp"

using namespace nlswap;

static void BM_Tensor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BoxTable a = isotropic_box(n, Scalar::inv_sqrt2());
  const BoxTable b = isotropic_box(2, Scalar::rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(BM_Tensor)->DenseRange(2, 4);

static void BM_GsiEvaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BoxTable b = isotropic_box(n, Scalar::inv_sqrt2());
  const BellFunctional f = gsi_coefficients(n);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, b));
}
BENCHMARK(BM_GsiEvaluate)->DenseRange(2, 6, 2);

static void BM_ApplyCoupler(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BoxTable joint = tensor(isotropic_box(n, Scalar::inv_sqrt2()), isotropic_box(n, Scalar::rational(1, 2)));
  const CouplerEffect c = build_coupler(2);
  const int consumed[] = {n - 1, n};
  for (auto _ : state) benchmark::DoNotOptimize(apply_coupler(c, joint, consumed));
}
BENCHMARK(BM_ApplyCoupler)->DenseRange(2, 4);

static void BM_HybridThree(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hybrid_three());
}
BENCHMARK(BM_HybridThree)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
