#include <benchmark/benchmark.h>

#include "fracsys/operator.hpp"
#include "fracsys/solver.hpp"

using namespace fracsys;

static void BM_AssembleOperator(benchmark::State& state) {
  const auto grid = Grid1D::make(-1.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_operator(grid, 0.5));
  }
}
BENCHMARK(BM_AssembleOperator)->Arg(128)->Arg(512)->Arg(2048);

static void BM_Factorize(benchmark::State& state) {
  const auto grid = Grid1D::make(-1.0, 1.0, static_cast<int>(state.range(0)));
  const auto A = assemble_operator(grid, 0.5);
  for (auto _ : state) {
    DirichletSolver solver(A, A);
    benchmark::DoNotOptimize(solver);
  }
}
BENCHMARK(BM_Factorize)->Arg(128)->Arg(512);

static void BM_SolveSystem(benchmark::State& state) {
  const auto grid = Grid1D::make(-1.0, 1.0, static_cast<int>(state.range(0)));
  const auto A = assemble_operator(grid, 0.5);
  SolverConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_system(A, A, 2.0, 2.0, cfg));
  }
}
BENCHMARK(BM_SolveSystem)->Arg(128)->Arg(256);

static void BM_Eigenpair(benchmark::State& state) {
  const auto grid = Grid1D::make(-1.0, 1.0, static_cast<int>(state.range(0)));
  const auto A = assemble_operator(grid, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_eigenpair(A, A));
  }
}
BENCHMARK(BM_Eigenpair)->Arg(256);

BENCHMARK_MAIN();
