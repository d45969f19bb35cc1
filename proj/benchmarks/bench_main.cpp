// Microbenchmarks for the hot paths: spectral transforms, the
// Dirichlet-Neumann solve, the full right-hand side, one RK4 step, and a
// complete Newton solve for a rotating wave.
#include "dropwave/dno.hpp"
#include "dropwave/dynamics.hpp"
#include "dropwave/evolution.hpp"
#include "dropwave/rotating_waves.hpp"
#include "dropwave/trig_series.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dropwave;

namespace {

DropState bench_state(std::size_t N, double size) {
  std::mt19937_64 rng(42);
  TrigSeries xi = random_series(N, 0.6, rng);
  TrigSeries chi = random_series(N, 0.6, rng);
  return {(size / sobolev_norm(xi, 3.0)) * xi, (size / sobolev_norm(chi, 3.0)) * chi};
}

void bm_sample_analyze(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  SolverGrid grid = SolverGrid::standard(N);
  DropState u = bench_state(N, 0.1);
  const std::size_t M = grid.dealias_points();
  for (auto _ : state) {
    TrigSeries round = analyze(sample(u.xi, M), N);
    benchmark::DoNotOptimize(round.mean);
  }
}

void bm_product(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  SolverGrid grid = SolverGrid::standard(N);
  DropState u = bench_state(N, 0.1);
  for (auto _ : state) {
    TrigSeries prod = product(u.xi, u.chi, grid);
    benchmark::DoNotOptimize(prod.mean);
  }
}

void bm_dno(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  SolverGrid grid = SolverGrid::standard(N);
  DropState u = bench_state(N, 0.1);
  for (auto _ : state) {
    TrigSeries g = dno(u.xi, u.chi, grid);
    benchmark::DoNotOptimize(g.mean);
  }
}

void bm_rhs(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  SolverGrid grid = SolverGrid::standard(N);
  PhysParams p{1.0};
  DropState u = bench_state(N, 0.1);
  for (auto _ : state) {
    auto f = rhs(u, p, grid);
    benchmark::DoNotOptimize(f.first.mean);
  }
}

void bm_step_rk4(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  SolverGrid grid = SolverGrid::standard(N);
  PhysParams p{1.0};
  DropState u = bench_state(N, 0.05);
  const double dt = default_dt(N, 1.0);
  for (auto _ : state) {
    DropState next = step_rk4(u, dt, p, grid);
    benchmark::DoNotOptimize(next.xi.mean);
  }
}

void bm_conserved(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  SolverGrid grid = SolverGrid::standard(N);
  PhysParams p{1.0};
  DropState u = bench_state(N, 0.05);
  for (auto _ : state) {
    ConservedSet c = conserved(u, p, grid);
    benchmark::DoNotOptimize(c.H);
  }
}

void bm_newton_solve(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  SolverGrid grid = SolverGrid::standard(N);
  PhysParams p{1.0};
  const double a = 1e-6;
  RotatingWave seed = seed_wave(2, 1.0, a, Symmetry::reversible(), grid);
  for (auto _ : state) {
    RotatingWave w = newton_solve(seed, a, p, grid);
    benchmark::DoNotOptimize(w.omega);
  }
}

BENCHMARK(bm_sample_analyze)->Arg(32)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_product)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_dno)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_rhs)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_step_rk4)->Arg(32)->Arg(64);
BENCHMARK(bm_conserved)->Arg(32)->Arg(64);
BENCHMARK(bm_newton_solve)->Arg(16)->Arg(32);

} // namespace

BENCHMARK_MAIN();
