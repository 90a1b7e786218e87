#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prh/transform.hpp"
#include "support.hpp"

#include <cstring>
#include <numbers>

using namespace prh;
using prh::test::random_smooth;
using prh::test::small_grid;

TEST_CASE("zero field transforms to zero coefficients") {
  const GridPtr g = small_grid(128, 10.0);
  const SpectralField s = sine_transform(RadialField(g));
  for (int j = 0; j < s.size(); ++j) CHECK(s[j] == 0.0);
  const RadialField back = inverse_sine_transform(SpectralField(g));
  for (int i = 0; i < back.size(); ++i) CHECK(back[i] == 0.0);
}

TEST_CASE("first DST basis function has exactly one nonzero coefficient") {
  const GridPtr g = small_grid(128, 10.0);
  RadialField u(g);
  for (int i = 0; i < u.size(); ++i) {
    const double r = g->r(i);
    u[i] = std::sin(std::numbers::pi * r / g->radius()) / r;
  }
  const SpectralField s = sine_transform(u);
  for (int j = 1; j < s.size(); ++j) CHECK(std::abs(s[j]) <= 1e-12 * s[0]);
  CHECK(s[0] > 0.0);
}

TEST_CASE("single spectral coefficient inverts to a sine mode over r") {
  const GridPtr g = small_grid(64, 10.0);
  SpectralField s(g);
  const int mode = 5;
  s[mode] = 1.0;
  const RadialField u = inverse_sine_transform(s);
  for (int i = 0; i < u.size(); ++i) {
    const double expected =
        2.0 / g->radius() * std::sin(g->rho(mode) * g->r(i)) / g->r(i);
    CHECK(u[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("round trip reproduces random fields to 1e-12") {
  for (uint64_t seed : {3u, 4u, 5u}) {
    const GridPtr g = small_grid(511, 22.0);
    const RadialField u = random_smooth(g, seed);
    const RadialField v = inverse_sine_transform(sine_transform(u));
    CHECK(l2_norm(v - u) <= 1e-12 * l2_norm(u));
    double max_err = 0.0;
    for (int i = 0; i < u.size(); ++i)
      max_err = std::max(max_err, std::abs(v[i] - u[i]));
    CHECK(max_err <= 1e-12 * max_abs(u));
  }
}

TEST_CASE("Parseval: spectral weights reproduce the physical sum") {
  const GridPtr g = small_grid(256, 18.0);
  const RadialField u = random_smooth(g, 11);
  const SpectralField s = sine_transform(u);
  double spectral = 0.0;
  for (int j = 0; j < s.size(); ++j) spectral += s[j] * s[j];
  spectral *= spectral_weight(*g);
  double physical = 0.0; // 4 pi dr sum (r u)^2, by direct summation
  for (int i = 0; i < u.size(); ++i) {
    const double v = g->r(i) * u[i];
    physical += v * v;
  }
  physical *= 4.0 * std::numbers::pi * g->dr();
  CHECK(spectral == doctest::Approx(physical).epsilon(1e-12));
}

TEST_CASE("h_s_norm at s = 0 is the L2 norm") {
  const GridPtr g = small_grid();
  const RadialField u = random_smooth(g, 21);
  CHECK(h_s_norm(u, 0.0) == doctest::Approx(l2_norm(u)).epsilon(1e-10));
  CHECK(h_s_norm(RadialField(g), 3.0) == 0.0);
}

TEST_CASE("h_s_norm is monotone in s") {
  const GridPtr g = small_grid();
  const RadialField u = random_smooth(g, 22);
  double prev = h_s_norm(u, 0.0);
  for (double s : {0.5, 1.0, 2.0, 3.5}) {
    const double cur = h_s_norm(u, s);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("negative Sobolev index is rejected") {
  const RadialField u(small_grid(32, 10.0));
  CHECK_THROWS_AS(h_s_norm(u, -0.5), std::invalid_argument);
}

TEST_CASE("spectral pairings reject mismatched grids") {
  const SpectralField a(small_grid(32, 10.0));
  const SpectralField b(small_grid(32, 12.0));
  CHECK_THROWS_AS(spectral_pairing(a, b, [](double) { return 1.0; }),
                  std::invalid_argument);
}

TEST_CASE("transforms are deterministic") {
  const GridPtr g = small_grid(200, 17.0);
  const RadialField u = random_smooth(g, 31);
  const SpectralField a = sine_transform(u);
  const SpectralField b = sine_transform(u);
  CHECK(std::memcmp(a.coeffs().data(), b.coeffs().data(),
                    sizeof(double) * a.size()) == 0);
}

TEST_CASE("evaluate_at matches grid nodes and resample round-trips") {
  const GridPtr g = small_grid(256, 20.0);
  const RadialField u = random_smooth(g, 41);
  const SpectralField s = sine_transform(u);
  for (int i : {0, 17, 100, 255})
    CHECK(evaluate_at(s, g->r(i)) == doctest::Approx(u[i]).epsilon(1e-10));
  const RadialField same = resample(u, g);
  CHECK(l2_norm(same - u) <= 1e-10 * l2_norm(u));
}
