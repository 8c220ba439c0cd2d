#include <benchmark/benchmark.h>

#include "dnls/schemes.hpp"

namespace {

using namespace dnls;

Field bench_initial(const Grid3& g) {
  ExactSolutionParams ex;
  return exact_u(0.0, ex, g);
}

void BM_SpectralLaplacian(benchmark::State& state) {
  Grid3 g = Grid3::cube(static_cast<int>(state.range(0)));
  SpectralOps ops(g);
  Field u = bench_initial(g);
  for (auto _ : state) {
    Field w = ops.laplacian(u);
    benchmark::DoNotOptimize(w.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_SpectralLaplacian)->Arg(16)->Arg(32)->Arg(64);

void BM_FdLaplacian(benchmark::State& state) {
  Grid3 g = Grid3::cube(static_cast<int>(state.range(0)));
  Field u = bench_initial(g);
  for (auto _ : state) {
    Field w = apply_fd_laplacian(u);
    benchmark::DoNotOptimize(w.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_FdLaplacian)->Arg(16)->Arg(32)->Arg(64);

void BM_ShiftedSolve(benchmark::State& state) {
  Grid3 g = Grid3::cube(static_cast<int>(state.range(0)));
  SpectralOps ops(g);
  Field rhs = bench_initial(g);
  std::vector<double> potential(g.size(), 1.0);
  SolverConfig cfg;
  for (auto _ : state) {
    StepOutcome out = solve_shifted(rhs, potential, 0.1, 2.0, cfg, ops);
    benchmark::DoNotOptimize(out.u.values.data());
  }
}
BENCHMARK(BM_ShiftedSolve)->Arg(16)->Arg(32);

void BM_Step(benchmark::State& state, SchemeKind kind, double tau) {
  Grid3 g = Grid3::cube(static_cast<int>(state.range(0)));
  PdeParams p;
  SolverConfig cfg;
  SchemeRun run(kind, bench_initial(g), p,
                TimeGrid(tau, std::numeric_limits<long>::max()), cfg);
  for (auto _ : state) {
    StepStats s = run.advance();
    benchmark::DoNotOptimize(s.residual);
  }
}
BENCHMARK_CAPTURE(BM_Step, licfp_tau0p1, SchemeKind::LiCfp, 0.1)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_Step, ifd_tau0p1, SchemeKind::Ifd, 0.1)->Arg(16);
// explicit step sizes sit inside the stability region tau*lambda_max < sqrt(3)
BENCHMARK_CAPTURE(BM_Step, rk3_tau0p005, SchemeKind::Rk3, 0.005)->Arg(16);
BENCHMARK_CAPTURE(BM_Step, rk3_tau0p001, SchemeKind::Rk3, 0.001)->Arg(32);

void BM_NormH(benchmark::State& state) {
  Grid3 g = Grid3::cube(static_cast<int>(state.range(0)));
  Field u = bench_initial(g);
  for (auto _ : state) {
    double n = norm_h(u);
    benchmark::DoNotOptimize(n);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_NormH)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
