#pragma once

#include "prh/field.hpp"
#include "prh/hartree.hpp"

namespace prh {

/// Linearization of the limit Hartree equation around a ground state:
/// L h = (P_inf + freq) h - N'(base)[h], self-adjoint on the radial sector
/// and invertible there by non-degeneracy of the base state.
struct LinearizedOp {
  RadialField base;
  double freq;
  PhysicalParams params;

  /// Validates freq > 0, c = infinity, and that base solves its equation to
  /// 1e-6 relative (it must be a converged ground state).
  LinearizedOp(RadialField base_state, double frequency,
               const PhysicalParams& p);
};

RadialField apply(const LinearizedOp& op, const RadialField& h);

struct KrylovStats {
  int iterations = 0;
  double rel_residual = 0.0;
};

/// Minimum-residual Krylov solve of L f = rhs, preconditioned by
/// (P_inf + freq)^{-1}.  Returns f with ||L f - rhs|| <= tol ||rhs|| in L^2.
/// Throws ConvergenceError on stagnation or iteration breach.
RadialField solve(const LinearizedOp& op, const RadialField& rhs,
                  double tol = 1e-10, int max_iter = 5000,
                  KrylovStats* stats = nullptr);

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, int iterations_done,
                   double residual_reached)
      : std::runtime_error(what),
        iterations(iterations_done),
        residual(residual_reached) {}
  int iterations;
  double residual;
};

} // namespace prh
