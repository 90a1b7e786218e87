#pragma once

// shared fixtures for the unit tests

#include "prh/field.hpp"

#include <cmath>
#include <random>

namespace prh::test {

inline GridPtr small_grid(int n = 512, double radius = 25.0) {
  return RadialGrid::create(n, radius);
}

inline RadialField gaussian(const GridPtr& grid, double amplitude = 1.0,
                            double width = 0.5) {
  RadialField u(grid);
  for (int i = 0; i < u.size(); ++i) {
    const double r = grid->r(i);
    u[i] = amplitude * std::exp(-width * r * r);
  }
  return u;
}

/// Smooth, rapidly decaying random field: a few Gaussians with random
/// amplitudes and widths.
inline RadialField random_smooth(const GridPtr& grid, uint64_t seed,
                                 double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.4, 2.0);
  RadialField u(grid);
  for (int g = 0; g < 4; ++g) {
    const double a = amplitude * amp(rng);
    const double b = width(rng);
    for (int i = 0; i < u.size(); ++i) {
      const double r = grid->r(i);
      u[i] += a * std::exp(-b * r * r);
    }
  }
  return u;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace prh::test
