#include <benchmark/benchmark.h>

#include "fracsys/profiles.hpp"
#include "fracsys/quadrature.hpp"

using namespace fracsys;

static void BM_PvSmoothProfile(benchmark::State& state) {
  QuadratureSpec spec;
  const auto prof = RadialProfile::gaussian();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pv_radial_fraclap(prof, n, 0.5, 1.0, spec));
  }
}
BENCHMARK(BM_PvSmoothProfile)->Arg(1)->Arg(2)->Arg(3);

static void BM_PvSingularPower(benchmark::State& state) {
  QuadratureSpec spec;
  const auto prof = RadialProfile::power(-2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pv_radial_fraclap(prof, 3, 0.5, 1.0, spec));
  }
}
BENCHMARK(BM_PvSingularPower);

static void BM_PvThetaLargeRadius(benchmark::State& state) {
  QuadratureSpec spec;
  const auto prof = RadialProfile::theta(3, 0.5);
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pv_radial_fraclap(prof, 3, 0.5, r, spec));
  }
}
BENCHMARK(BM_PvThetaLargeRadius)->Arg(10)->Arg(100)->Arg(400);

static void BM_NormalizationConstant(benchmark::State& state) {
  QuadratureSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalization_constant(3, 0.5, spec));
  }
}
BENCHMARK(BM_NormalizationConstant);
