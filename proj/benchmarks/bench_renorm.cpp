#include <benchmark/benchmark.h>

#include "ietlab/fixtures.hpp"

using namespace ietlab;

static void RvOrbitGolden(benchmark::State& state) {
  auto T = fixtures::golden_rotation();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto orbit = rv_orbit(T, steps);
    benchmark::DoNotOptimize(orbit.q.back());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(RvOrbitGolden)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void ZorichOrbitD4(benchmark::State& state) {
  std::vector<double> lam{0.15, 0.35, 0.3, 0.2};
  Iet<double> T(Permutation::reversal(4), lam);
  Suspension<double> S(T, {0.5, 0.2, -0.3, -0.45});
  for (auto _ : state) {
    auto orbit = zorich_orbit(S, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(orbit.blocks());
  }
}
BENCHMARK(ZorichOrbitD4)->Arg(16)->Arg(64);

static void PerronLoop(benchmark::State& state) {
  auto fx = fixtures::symmetric_d4();
  for (auto _ : state) {
    auto v = perron_left_vector<long double>(fx.self_similar.loop_matrix);
    benchmark::DoNotOptimize(v[0]);
  }
}
BENCHMARK(PerronLoop);
