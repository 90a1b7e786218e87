#pragma once

#include "prh/ground_state.hpp"

#include <span>
#include <vector>

namespace prh {

/// Correction series of the non-relativistic limit: the base limit state plus
/// fields f_j (action) or g_j with scalar coefficients a_j, b_j (energy), so
/// that the finite-c state is approximated by base + sum_j corr_j / c^{2j}.
struct ExpansionSeries {
  ProblemKind kind = ProblemKind::action;
  GroundStateResult base;           ///< the limit problem solution
  std::vector<RadialField> corrections; ///< f_1..f_n or g_1..g_n
  std::vector<double> a;            ///< energy-level coefficients (energy kind)
  std::vector<double> b;            ///< multiplier coefficients (energy kind)
  int order = 0;
};

/// f_k solves L_lambda f_k = -sum_{j<k} P_{inf,k-j}(D) f_j + T_k.
ExpansionSeries build_action_expansion(const GroundStateResult& base, int order,
                                       double tol = 1e-10);

/// g_k solves L_omega g_k = -sum_{j<k} P_{inf,k-j}(D) g_j
///                          - sum_{j<k} b_{k-j} g_j + T_k,
/// with a_k, b_k computed from g_0..g_{k-1} before each solve.
ExpansionSeries build_energy_expansion(const GroundStateResult& base, int order,
                                       double tol = 1e-10);

/// Coefficient pieces of the energy expansion; g spans g_0..g_{j-1} at least.
double series_coeff_a1(std::span<const RadialField> g, int j, double m);
double series_coeff_a2(double omega_inf, std::span<const RadialField> g, int j,
                       double m);
double series_coeff_b1(std::span<const RadialField> g, int j, double m);
/// a_j = a1_j + a2_j
double series_coeff_a(double omega_inf, std::span<const RadialField> g, int j,
                      double m);
/// b_j = -3 a_j + a1_j - b1_j
double series_coeff_b(double omega_inf, std::span<const RadialField> g, int j,
                      double m);

/// base + sum_{j=1}^{up_to} corrections[j-1] / c^{2j}
RadialField eval_series(const ExpansionSeries& s, double c, int up_to);
double eval_scalar_series(double base_value, std::span<const double> coeffs,
                          double c, int up_to);

/// Recomputes the defining right-hand side of correction j (1-based) and
/// returns ||L corr_j - rhs|| / ||rhs||, independently of the stored solve.
double correction_residual(const ExpansionSeries& s, int j);

} // namespace prh
