#include <benchmark/benchmark.h>

#include <cmath>

#include "bgn/diagnostics.hpp"
#include "bgn/dynamics.hpp"
#include "bgn/elliptic.hpp"

using namespace bgn;

namespace {

struct Setup {
  PeriodicGrid grid;
  RegimeParams params;
  ModelCoefficients coeffs;
  Bathymetry bathy;
  State state;
  DerivedFields df;

  explicit Setup(int n)
      : grid(20.0, n),
        params(),
        coeffs(),
        bathy(),
        state(),
        df() {
    params.mu = 0.04;
    params.eps = 0.2;
    params.beta = 0.2;
    params.gamma = 0.5;
    params.delta = 1.2;
    coeffs = compute_coefficients(params);
    bathy = make_bathymetry(grid, Profile{ProfileKind::gaussian, 0.5, 1.0, 15.0, 1});
    state.zeta = sample_profile(grid, Profile{ProfileKind::gaussian, 1.0, 1.0, 10.0, 1});
    state.v = sample_profile(grid, Profile{ProfileKind::gaussian, 0.3, 1.5, 8.0, 1});
    df = derive(grid, state, bathy, params, coeffs);
  }
};

}  // namespace

static void BM_TSolve(benchmark::State& bench) {
  const Setup s(static_cast<int>(bench.range(0)));
  const TOperator op = build_t_operator(s.grid, s.df, s.params, s.coeffs);
  const Field rhs = t_apply(op, s.state.zeta);
  for (auto _ : bench) {
    Field x = t_solve(op, rhs);
    benchmark::DoNotOptimize(x.data());
  }
  bench.SetComplexityN(bench.range(0));
}
BENCHMARK(BM_TSolve)->RangeMultiplier(2)->Range(128, 4096)->Complexity();

static void BM_RhsPrimitive(benchmark::State& bench) {
  const Setup s(static_cast<int>(bench.range(0)));
  for (auto _ : bench) {
    Tendency t = rhs_primitive(s.grid, s.state, s.bathy, s.params, s.coeffs);
    benchmark::DoNotOptimize(t.dv.data());
  }
  bench.SetComplexityN(bench.range(0));
}
BENCHMARK(BM_RhsPrimitive)->RangeMultiplier(2)->Range(128, 4096)->Complexity();

static void BM_StepRK4(benchmark::State& bench) {
  const Setup s(static_cast<int>(bench.range(0)));
  const double dt = 0.5 * s.grid.dx;
  for (auto _ : bench) {
    State next = step_rk4(s.grid, s.state, s.bathy, s.params, s.coeffs, dt);
    benchmark::DoNotOptimize(next.zeta.data());
  }
  bench.SetComplexityN(bench.range(0));
}
BENCHMARK(BM_StepRK4)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

static void BM_Energy(benchmark::State& bench) {
  const Setup s(static_cast<int>(bench.range(0)));
  for (auto _ : bench) {
    EnergyReport rep = energy(s.grid, s.state, s.bathy, s.params, s.coeffs, 2.0);
    benchmark::DoNotOptimize(rep.es);
  }
  bench.SetComplexityN(bench.range(0));
}
BENCHMARK(BM_Energy)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

BENCHMARK_MAIN();
