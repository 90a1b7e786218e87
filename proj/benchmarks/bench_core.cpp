#include "prh/ground_state.hpp"
#include "prh/hartree.hpp"
#include "prh/linearized.hpp"
#include "prh/multipliers.hpp"

#include <benchmark/benchmark.h>

using namespace prh;

namespace {

RadialField test_field(const GridPtr& grid) {
  RadialField u(grid);
  for (int i = 0; i < u.size(); ++i) {
    const double r = grid->r(i);
    u[i] = std::exp(-0.5 * r * r) * (1.0 + 0.2 * r);
  }
  return u;
}

void BM_SineTransformRoundTrip(benchmark::State& state) {
  const GridPtr grid = RadialGrid::create(state.range(0), 40.0);
  const RadialField u = test_field(grid);
  for (auto _ : state) {
    RadialField v = inverse_sine_transform(sine_transform(u));
    benchmark::DoNotOptimize(v.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SineTransformRoundTrip)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_CoulombPotential(benchmark::State& state) {
  const GridPtr grid = RadialGrid::create(state.range(0), 40.0);
  const RadialField f = test_field(grid);
  for (auto _ : state) {
    RadialField phi = coulomb_potential(f);
    benchmark::DoNotOptimize(phi.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CoulombPotential)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_HartreeNonlinearity(benchmark::State& state) {
  const GridPtr grid = RadialGrid::create(4096, 40.0);
  const RadialField u = test_field(grid);
  for (auto _ : state) {
    RadialField nu = hartree_nonlinearity(u);
    benchmark::DoNotOptimize(nu.values().data());
  }
}
BENCHMARK(BM_HartreeNonlinearity);

void BM_ApplyRelativisticMultiplier(benchmark::State& state) {
  const GridPtr grid = RadialGrid::create(4096, 40.0);
  const RadialField u = test_field(grid);
  PhysicalParams p;
  p.c = 40.0;
  const MultiplierSpec spec = MultiplierSpec::pc(p);
  for (auto _ : state) {
    RadialField v = apply_multiplier(spec, u);
    benchmark::DoNotOptimize(v.values().data());
  }
}
BENCHMARK(BM_ApplyRelativisticMultiplier);

void BM_EnergyGroundState(benchmark::State& state) {
  const GridPtr grid = RadialGrid::create(state.range(0), 30.0);
  PhysicalParams p;
  SolverOptions opts;
  opts.tol = 1e-10;
  for (auto _ : state) {
    GroundStateResult r = solve_energy(grid, p, opts);
    benchmark::DoNotOptimize(r.level);
  }
}
BENCHMARK(BM_EnergyGroundState)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_LinearizedSolve(benchmark::State& state) {
  const GridPtr grid = RadialGrid::create(1024, 30.0);
  PhysicalParams p;
  SolverOptions opts;
  opts.tol = 1e-11;
  const GroundStateResult base = solve_action(grid, p, opts);
  const LinearizedOp op(base.profile, p.lambda, p);
  RadialField rhs =
      apply_multiplier(MultiplierSpec::pinf_n(p, 1), base.profile);
  rhs *= -1.0;
  for (auto _ : state) {
    RadialField f = solve(op, rhs, 1e-10);
    benchmark::DoNotOptimize(f.values().data());
  }
  state.SetLabel("first correction solve");
}
BENCHMARK(BM_LinearizedSolve)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
