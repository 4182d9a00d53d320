#include <benchmark/benchmark.h>

#include "zlab/arith.hpp"
#include "zlab/hardy.hpp"
#include "zlab/mellin.hpp"
#include "zlab/moments.hpp"
#include "zlab/quad.hpp"
#include "zlab/special.hpp"

using namespace zlab;

static void BM_ZetaEulerMaclaurin(benchmark::State& state) {
  const Complex s(0.5, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_em(s));
}
BENCHMARK(BM_ZetaEulerMaclaurin)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_ZRiemannSiegel(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_rs(t, 3));
}
BENCHMARK(BM_ZRiemannSiegel)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_ZOracle(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_oracle(t));
}
BENCHMARK(BM_ZOracle)->Arg(100)->Arg(1000);

static void BM_DivisorSieve(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(divisor_sieve(3, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DivisorSieve)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_HardyMoment(benchmark::State& state) {
  const double b = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hardy_moment(2, 10.0, b, 1e-8));
}
BENCHMARK(BM_HardyMoment)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_MellinNodeSum(benchmark::State& state) {
  primitive_table(1, 1e4);
  double t = 1.0;
  for (auto _ : state) {
    // A fresh ordinate each time so the memo table is bypassed.
    t += 1e-3;
    benchmark::DoNotOptimize(mellin_node_sum(1, NodeKind::integrand, 1.0, 1e4, Complex(2.0, t)));
  }
}
BENCHMARK(BM_MellinNodeSum)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
