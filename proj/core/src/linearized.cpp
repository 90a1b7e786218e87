#include "prh/linearized.hpp"

#include "prh/multipliers.hpp"

#include <cmath>

namespace prh {

LinearizedOp::LinearizedOp(RadialField base_state, double frequency,
                           const PhysicalParams& p)
    : base(std::move(base_state)), freq(frequency), params(p) {
  if (!(freq > 0.0) || !std::isfinite(freq))
    throw std::invalid_argument("LinearizedOp: freq must be finite and > 0");
  if (!params.nonrelativistic())
    throw std::invalid_argument("LinearizedOp: linearization is at c = infinity");
  params.validate();
  // base must solve (P_inf + freq) u = N(u)
  const MultiplierSpec pinf = MultiplierSpec::pinf(params);
  RadialField lhs = apply_multiplier(pinf, base);
  lhs += freq * base;
  const double scale = l2_norm(lhs);
  lhs -= hartree_nonlinearity(base);
  if (l2_norm(lhs) > 1e-6 * scale)
    throw std::invalid_argument(
        "LinearizedOp: base is not a converged ground state for this freq");
}

RadialField apply(const LinearizedOp& op, const RadialField& h) {
  detail::require_same_grid(op.base.grid(), h.grid());
  const MultiplierSpec pinf = MultiplierSpec::pinf(op.params);
  RadialField out = apply_multiplier(pinf, h);
  out += op.freq * h;
  out -= d1_nonlinearity(op.base, h);
  return out;
}

RadialField solve(const LinearizedOp& op, const RadialField& rhs, double tol,
                  int max_iter, KrylovStats* stats) {
  const GridPtr& grid = rhs.grid_ptr();
  detail::require_same_grid(op.base.grid(), rhs.grid());
  const MultiplierSpec precond =
      MultiplierSpec::resolvent(SymbolKind::pinf, op.params, op.freq);

  const double rhs_norm = l2_norm(rhs);
  if (rhs_norm == 0.0) return RadialField(grid);
  const double target = tol * rhs_norm;

  // MINRES with SPD preconditioning (Paige-Saunders recurrences), run in the
  // weighted radial L^2 inner product in which L is self-adjoint.
  RadialField x(grid);
  RadialField r1 = rhs;
  RadialField y = apply_multiplier(precond, r1);
  double beta1 = inner_product(r1, y);
  if (beta1 <= 0.0)
    throw ConvergenceError("minres: preconditioner lost definiteness", 0, 1.0);
  beta1 = std::sqrt(beta1);

  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
  double phibar = beta1, cs = -1.0, sn = 0.0;
  RadialField r2 = r1;
  RadialField w(grid), w2(grid);

  double best_residual = std::numeric_limits<double>::infinity();
  int checks_without_progress = 0;
  int check_countdown = 0;

  for (int k = 1; k <= max_iter; ++k) {
    RadialField v = (1.0 / beta) * y;
    y = apply(op, v);
    if (k >= 2) y -= (beta / oldb) * r1;
    const double alfa = inner_product(v, y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    y = apply_multiplier(precond, r2);
    oldb = beta;
    double beta_sq = inner_product(r2, y);
    if (beta_sq < 0.0) beta_sq = 0.0;
    beta = std::sqrt(beta_sq);

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::hypot(gbar, beta);
    gamma = std::max(gamma, 1e-300);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    RadialField w1 = w2;
    w2 = w;
    w = (1.0 / gamma) * (v - oldeps * w1 - delta * w2);
    x += phi * w;

    // phibar estimates the residual in the preconditioned norm; confirm with
    // the true L^2 residual before declaring victory.
    const bool estimate_small = phibar <= tol * beta1;
    if (estimate_small || beta == 0.0 || check_countdown == 1) {
      RadialField res = rhs - apply(op, x);
      const double res_norm = l2_norm(res);
      const double rel = res_norm / rhs_norm;
      if (res_norm <= target) {
        if (stats) {
          stats->iterations = k;
          stats->rel_residual = rel;
        }
        return x;
      }
      if (rel < best_residual * (1.0 - 1e-3)) {
        best_residual = rel;
        checks_without_progress = 0;
      } else if (++checks_without_progress >= 50) {
        throw ConvergenceError(
            "minres: stagnated above tolerance (round-off floor of the "
            "operator application; near-singular L, a too-coarse grid, or an "
            "overly strict tolerance)",
            k, best_residual);
      }
      check_countdown = 6; // re-check soon, not every pass
      if (beta == 0.0)
        throw ConvergenceError(
            "minres: Krylov space exhausted before reaching tolerance (grid "
            "too coarse or base not a true ground state)",
            k, best_residual);
    }
    if (check_countdown > 0) --check_countdown;
  }
  throw ConvergenceError("minres: iteration limit reached", max_iter,
                         best_residual);
}

} // namespace prh
