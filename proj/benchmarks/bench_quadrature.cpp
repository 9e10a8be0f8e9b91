#include <benchmark/benchmark.h>

#include <cmath>

#include "ietlab/saddle.hpp"

using namespace ietlab;

static void Phi1Case1Log(benchmark::State& state) {
  GFunction g = GFunction::log_e_plus_x();
  const double s = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi1(1, s, g, 0.5, 1e-10));
  }
}
BENCHMARK(Phi1Case1Log)->Arg(2)->Arg(6)->Arg(10);

static void SectorIntegralM2(benchmark::State& state) {
  static Potential pot = build_potential(GFunction::log_e_plus_x(), 0.5);
  SectorSpec spec{2, 1, 0, true, 0, 0.5};
  const double s = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_sector(spec, s, pot, 1e-10));
  }
}
BENCHMARK(SectorIntegralM2)->Arg(3)->Arg(7);

static void PotentialTabulation(benchmark::State& state) {
  for (auto _ : state) {
    Potential pot = build_potential(GFunction::log_e_plus_x(), 0.5);
    benchmark::DoNotOptimize(pot.hinv(1e-9));
  }
}
BENCHMARK(PotentialTabulation);
