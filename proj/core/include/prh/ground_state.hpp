#pragma once

#include "prh/field.hpp"
#include "prh/linearized.hpp"

#include <optional>

namespace prh {

enum class ProblemKind { action, energy };

struct SolverOptions {
  double tol = 1e-10;       ///< L^2 equation-residual tolerance
  int max_iter = 100000;
  double damping = 0.5;     ///< Picard mixing for the action solve
  double sigma_factor = 2.0;///< stabilization multiple of the multiplier
  double sigma_min = 0.5;   ///< stabilization floor for the energy flow
  double c_min = 5.0;       ///< refuse finite c below this
  std::optional<RadialField> initial_guess;
};

struct GroundStateResult {
  RadialField profile;
  ProblemKind kind;
  PhysicalParams params;
  double level;        ///< J or E value
  double multiplier;   ///< lambda echoed (action), omega extracted (energy)
  double residual_l2;  ///< L^2 norm of the equation residual
  int iterations;
  bool converged;
  double max_energy_increase; ///< worst per-step energy drift (energy kind)
};

/// Action ground state by damped Picard iteration with Nehari rescaling.
GroundStateResult solve_action(const GridPtr& grid, const PhysicalParams& params,
                               const SolverOptions& opts = {});

/// Energy ground state (unit L^2 mass) by the stabilized semi-implicit
/// normalized gradient flow.
GroundStateResult solve_energy(const GridPtr& grid, const PhysicalParams& params,
                               const SolverOptions& opts = {});

/// <T_c(D) w, w> + e_c for finite c, <P_inf w, w> + e_inf in the limit.
/// Solver-independent diagnostic; small only for true energy ground states.
double pohozaev_residual(const GroundStateResult& res);

/// Recomputed L^2 equation residual ||(P + freq) u - N(u)|| of a result,
/// with freq = lambda (action) or the stored multiplier (energy).  Used to
/// re-validate loaded profiles.
double equation_residual(const GroundStateResult& res);

/// Nehari scaling t_c with t_c u_inf on the c-dependent Nehari manifold:
/// t_c^2 = <(P_c + lambda) u_inf, u_inf> / H(u_inf).
double nehari_scale(const RadialField& u_inf, const PhysicalParams& params);

/// The energy problem is unbounded below for c too small; the solver refuses
/// such parameters instead of guessing the threshold.
struct SubcriticalError : std::runtime_error {
  explicit SubcriticalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace prh
