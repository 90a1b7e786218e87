#pragma once

#include "prh/field.hpp"

namespace prh {

/// DST-I of v(r) = r u(r), normalized so that coefficient j approximates
/// int_0^R v(r) sin(rho_j r) dr.  Every radial Fourier multiplier acts
/// diagonally on these coefficients.
SpectralField sine_transform(const RadialField& u);

/// Exact inverse of sine_transform up to round-off.
RadialField inverse_sine_transform(const SpectralField& s);

/// Discrete Parseval weight: <u, v>_{L^2(R^3)} = spectral_weight(grid) *
/// sum_j u~_j v~_j, exactly (to round-off) equal to the physical quadrature.
double spectral_weight(const RadialGrid& g);

/// Sobolev norm (sum_j w (1+rho_j^2)^s |u~_j|^2)^{1/2} with the L^2 spectral
/// quadrature weight w.  s = 0 matches l2_norm to round-off.
double h_s_norm(const RadialField& u, double s);
double h_s_norm(const SpectralField& u, double s);

/// <W(D) a, b> for a scalar symbol w(rho) evaluated at the grid frequencies.
template <class F>
double spectral_pairing(const SpectralField& a, const SpectralField& b, F&& w) {
  detail::require_same_grid(a.grid(), b.grid());
  const RadialGrid& g = a.grid();
  double acc = 0.0;
  for (int j = 0; j < a.size(); ++j) acc += w(g.rho(j)) * a[j] * b[j];
  return spectral_weight(g) * acc;
}

/// Evaluate the sine-series interpolant of u at an arbitrary radius r >= 0.
double evaluate_at(const SpectralField& u, double r);

/// Sample the sine-series interpolant of u on another grid.  Radii beyond the
/// source domain evaluate to the (periodic) series; callers keep target R <=
/// source R when comparing refined runs.
RadialField resample(const RadialField& u, const GridPtr& target);

} // namespace prh
