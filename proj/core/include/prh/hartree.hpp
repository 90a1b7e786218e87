#pragma once

#include "prh/field.hpp"
#include "prh/multipliers.hpp"

#include <span>

namespace prh {

/// Coulomb potential (|x|^{-1} * f)(r) of a radial density by Newton's shell
/// formula, (4 pi / r) int_0^r s^2 f ds + 4 pi int_r^R s f ds, with cumulative
/// trapezoid and its leading quadrature correction.  Linear, self-adjoint
/// under the radial L^2 pairing, positivity preserving.
RadialField coulomb_potential(const RadialField& f);

/// Cross-check route: multiply the sine coefficients by 4 pi / rho^2 and add
/// the monopole shift Q/R that converts the finite-R Dirichlet solution to the
/// free-space potential.
RadialField coulomb_potential_spectral(const RadialField& f);

/// N(u) = (|x|^{-1} * u^2) u
RadialField hartree_nonlinearity(const RadialField& u);
/// N'(u)[h] = (|x|^{-1} * u^2) h + 2 (|x|^{-1} * (u h)) u
RadialField d1_nonlinearity(const RadialField& u, const RadialField& h);
/// N''(u)[h1,h2] = 2 (|x|^{-1}*(h1 h2)) u + 2 (|x|^{-1}*(u h1)) h2
///               + 2 (|x|^{-1}*(u h2)) h1
RadialField d2_nonlinearity(const RadialField& u, const RadialField& h1,
                            const RadialField& h2);
/// N'''[h1,h2,h3] = 2 sum_cyclic (|x|^{-1}*(h_i h_j)) h_k; u-independent, and
/// all higher derivatives vanish (the cubic Taylor expansion of N is exact).
RadialField d3_nonlinearity(const RadialField& h1, const RadialField& h2,
                            const RadialField& h3);

/// H(u) = int int u^2(x) u^2(y) / |x-y| = <N(u), u>  (>= 0)
double hartree_energy(const RadialField& u);

/// J(u) = <(P + lambda) u, u> - H(u)/2 with P selected by params.c
double action_value(const RadialField& u, const PhysicalParams& params);
/// E(u) = <P u, u> - H(u)/2
double energy_value(const RadialField& u, const PhysicalParams& params);
/// <(P + lambda) u, u> - H(u), i.e. half of dJ(u)[u]; zero on the Nehari set.
double nehari_residual(const RadialField& u, const PhysicalParams& params);

/// T_k(f_0..f_{k-1}) = sum_{j=2}^{min(k,3)} (1/j!) sum over ordered
/// compositions i_1+..+i_j = k, 1 <= i_m <= k-1, of N^(j)(f_0)[f_{i_1},..].
/// T_1 = 0.  fields must hold at least k entries (f_0..f_{k-1}).
RadialField hartree_composition_sum(std::span<const RadialField> fields, int k);

/// k-th derivative of E_inf(u) = <P_inf u, u> - H(u)/2 at w in directions h,
/// for k = 1..4; the expansion to fourth order is exact.  h.size() == k.
double energy_derivative(const RadialField& w, std::span<const RadialField> h,
                         int k, double m = 1.0);

} // namespace prh
