#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prh/ground_state.hpp"
#include "prh/multipliers.hpp"
#include "support.hpp"

using namespace prh;
using prh::test::random_smooth;
using prh::test::small_grid;

namespace {

const GroundStateResult& limit_action_state() {
  static const GroundStateResult res = [] {
    PhysicalParams p;
    SolverOptions opts;
    opts.tol = 1e-11;
    return solve_action(small_grid(), p, opts);
  }();
  return res;
}

LinearizedOp limit_op() {
  const GroundStateResult& gs = limit_action_state();
  return LinearizedOp(gs.profile, gs.params.lambda, gs.params);
}

} // namespace

TEST_CASE("constructor validates its inputs") {
  const GroundStateResult& gs = limit_action_state();
  CHECK_THROWS_AS(LinearizedOp(gs.profile, -1.0, gs.params),
                  std::invalid_argument);
  PhysicalParams finite = gs.params;
  finite.c = 40.0;
  CHECK_THROWS_AS(LinearizedOp(gs.profile, 1.0, finite), std::invalid_argument);
  // a Gaussian is not a ground state
  CHECK_THROWS_AS(
      LinearizedOp(prh::test::gaussian(gs.profile.grid_ptr()), 1.0, gs.params),
      std::invalid_argument);
}

TEST_CASE("L of zero is zero") {
  const LinearizedOp op = limit_op();
  const RadialField z = apply(op, RadialField(op.base.grid_ptr()));
  CHECK(l2_norm(z) == 0.0);
}

TEST_CASE("L u_inf collapses to -2 (P_inf + lambda) u_inf") {
  const LinearizedOp op = limit_op();
  const RadialField lhs = apply(op, op.base);
  RadialField rhs = apply_multiplier(MultiplierSpec::pinf(op.params), op.base);
  rhs += op.freq * op.base;
  rhs *= -2.0;
  CHECK(l2_norm(lhs - rhs) <= 1e-8 * l2_norm(rhs));
}

TEST_CASE("L is self-adjoint") {
  const LinearizedOp op = limit_op();
  for (uint64_t seed : {1u, 2u, 3u}) {
    const RadialField h1 = random_smooth(op.base.grid_ptr(), seed);
    const RadialField h2 = random_smooth(op.base.grid_ptr(), seed + 9);
    const double a = inner_product(apply(op, h1), h2);
    const double b = inner_product(apply(op, h2), h1);
    CHECK(prh::test::rel_diff(a, b) <= 1e-12);
  }
}

TEST_CASE("solve recovers a manufactured solution") {
  const LinearizedOp op = limit_op();
  const RadialField h = random_smooth(op.base.grid_ptr(), 77);
  const RadialField rhs = apply(op, h);
  KrylovStats stats;
  const RadialField f = solve(op, rhs, 1e-11, 5000, &stats);
  CHECK(stats.rel_residual <= 1e-11);
  CHECK(l2_norm(f - h) <= 1e-7 * l2_norm(h));
}

TEST_CASE("solve of the zero right-hand side is zero") {
  const LinearizedOp op = limit_op();
  CHECK(l2_norm(solve(op, RadialField(op.base.grid_ptr()))) == 0.0);
}

TEST_CASE("first correction equation has a small verified residual") {
  const LinearizedOp op = limit_op();
  RadialField rhs =
      apply_multiplier(MultiplierSpec::pinf_n(op.params, 1), op.base);
  rhs *= -1.0;
  const RadialField f1 = solve(op, rhs, 1e-11);
  CHECK(l2_norm(apply(op, f1) - rhs) <= 1e-8 * l2_norm(rhs));
  // -P_{inf,1}(D) u = +(1/8 m^3) (-Delta)^2 u
  RadialField alt = apply_multiplier(MultiplierSpec::frac_lap(2.0), op.base);
  alt *= 1.0 / (8.0 * std::pow(op.params.m, 3));
  CHECK(l2_norm(alt - rhs) <= 1e-12 * l2_norm(rhs));
}

TEST_CASE("iteration limit raises a convergence error") {
  const LinearizedOp op = limit_op();
  const RadialField rhs = random_smooth(op.base.grid_ptr(), 91);
  CHECK_THROWS_AS(solve(op, rhs, 1e-13, 2), ConvergenceError);
}

TEST_CASE("an unreachable tolerance reports stagnation, not a timeout") {
  const LinearizedOp op = limit_op();
  const RadialField rhs = random_smooth(op.base.grid_ptr(), 92);
  try {
    solve(op, rhs, 1e-16, 100000);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations < 100000); // bailed early at the round-off floor
    CHECK(e.residual < 1e-10);
  }
}

TEST_CASE("solve quality is stable under grid refinement") {
  // H^2 gain of the inverse and the preconditioned iteration count should be
  // roughly grid-independent (the perturbation is compact).
  PhysicalParams p;
  SolverOptions opts;
  opts.tol = 1e-11;
  double gain[2];
  int iters[2];
  int idx = 0;
  for (int n : {256, 513}) {
    const GridPtr grid = RadialGrid::create(n, 25.0);
    const GroundStateResult gs = solve_action(grid, p, opts);
    const LinearizedOp op(gs.profile, p.lambda, p);
    const RadialField rhs = random_smooth(grid, 5);
    KrylovStats stats;
    const RadialField f = solve(op, rhs, 1e-10, 5000, &stats);
    gain[idx] = h_s_norm(f, 2.0) / l2_norm(rhs);
    iters[idx] = stats.iterations;
    ++idx;
  }
  CHECK(gain[1] <= 2.0 * gain[0]);
  CHECK(gain[0] <= 2.0 * gain[1]);
  CHECK(iters[1] <= 2 * iters[0] + 10);
}
