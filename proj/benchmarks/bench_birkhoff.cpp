#include <benchmark/benchmark.h>

#include "ietlab/birkhoff.hpp"
#include "ietlab/fixtures.hpp"

using namespace ietlab;

static void BirkhoffSumLogCocycle(benchmark::State& state) {
  auto T = fixtures::golden_rotation();
  auto phi = make_phi_a(T, Rational(1));
  const long long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(birkhoff_sum(T, *phi, 0.2345678901, n));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BirkhoffSumLogCocycle)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

static void IetApplyChain(benchmark::State& state) {
  std::vector<double> lam{0.15, 0.35, 0.3, 0.2};
  Iet<double> T(Permutation::reversal(4), lam);
  double x = 0.2345678901;
  for (auto _ : state) {
    for (int i = 0; i < 1024; ++i) x = T.apply(x);
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(IetApplyChain);

static void FirstReturnSystem(benchmark::State& state) {
  auto T = fixtures::golden_rotation();
  for (auto _ : state) {
    auto sys = first_return_system(T, {0.3, 0.45});
    benchmark::DoNotOptimize(sys.pieces.size());
  }
}
BENCHMARK(FirstReturnSystem);
