#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prh/multipliers.hpp"
#include "support.hpp"

#include <cmath>

using namespace prh;
using prh::test::gaussian;
using prh::test::random_smooth;
using prh::test::small_grid;

namespace {

PhysicalParams params(double c, double m = 1.0) {
  PhysicalParams p;
  p.m = m;
  p.c = c;
  return p;
}

// (2k-2)! / (k! (k-1)! 2^{2k-1}) evaluated directly; overflows past k ~ 15
double alpha_factorial(int k) {
  return std::tgamma(2.0 * k - 1.0) /
         (std::tgamma(k + 1.0) * std::tgamma(static_cast<double>(k)) *
          std::pow(2.0, 2 * k - 1));
}

} // namespace

TEST_CASE("alpha takes its published values") {
  CHECK(alpha(1) == 0.5);
  CHECK(alpha(2) == 0.125);
  CHECK(alpha(3) == 0.0625);
  CHECK(alpha(4) == doctest::Approx(5.0 / 128.0).epsilon(1e-15));
  CHECK_THROWS_AS(alpha(0), std::invalid_argument);
}

TEST_CASE("alpha recurrence agrees with the factorial formula") {
  for (int k = 1; k <= 14; ++k)
    CHECK(alpha(k) == doctest::Approx(alpha_factorial(k)).epsilon(1e-12));
}

TEST_CASE("P_c vanishes at the origin and matches sqrt(2)-1 at m=c=rho=1") {
  CHECK(eval_symbol(MultiplierSpec::pc(params(1.0)), 0.0) == 0.0);
  CHECK(eval_symbol(MultiplierSpec::pc(params(7.0, 2.5)), 0.0) == 0.0);
  CHECK(eval_symbol(MultiplierSpec::pc(params(1.0)), 1.0) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK_THROWS_AS(eval_symbol(MultiplierSpec::pc(params(1.0)), -1.0),
                  std::invalid_argument);
}

TEST_CASE("invalid specs are rejected") {
  PhysicalParams inf = params(infinite_c);
  CHECK_THROWS_AS(MultiplierSpec::pc_n(inf, 2), std::invalid_argument);
  CHECK_THROWS_AS(MultiplierSpec::pc(inf), std::invalid_argument);
  CHECK_THROWS_AS(MultiplierSpec::tc(inf), std::invalid_argument);
  CHECK_THROWS_AS(MultiplierSpec::resolvent(SymbolKind::pinf, params(1.0), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(MultiplierSpec::resolvent(SymbolKind::tc, params(1.0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(MultiplierSpec::frac_lap(-1.0), std::invalid_argument);
}

TEST_CASE("remainder symbol obeys the alpha_3 bound below m c") {
  // |P_{c,2}(rho)| <= alpha_3 rho^6 / (m^5 c^4) for rho in (0, m c)
  const double m = 1.0, c = 10.0;
  const MultiplierSpec spec = MultiplierSpec::pc_n(params(c, m), 2);
  for (int k = 1; k <= 99; ++k) {
    const double rho = m * c * k / 100.0;
    const double bound =
        alpha(3) * std::pow(rho, 6) / (std::pow(m, 5) * std::pow(c, 4));
    CHECK(std::abs(eval_symbol(spec, rho)) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("remainder symbol signs alternate with the order") {
  const GridPtr g = small_grid(512, 20.0);
  for (auto [m, c] : {std::pair{1.0, 10.0}, {1.0, 80.0}, {0.7, 30.0}}) {
    for (int n = 1; n <= 4; ++n) {
      const MultiplierSpec spec = MultiplierSpec::pc_n(params(c, m), n);
      const double parity = (n % 2 == 0) ? 1.0 : -1.0;
      for (int j = 0; j < g->size(); ++j)
        CHECK(parity * eval_symbol(spec, g->rho(j)) >= 0.0);
    }
  }
}

TEST_CASE("consistency P_{c,n+1} = P_{c,n} - P_{inf,n}/c^{2n}") {
  const PhysicalParams p = params(12.0, 1.3);
  for (int n : {0, 1, 2, 3}) {
    const MultiplierSpec big = MultiplierSpec::pc_n(p, n);
    const MultiplierSpec small = MultiplierSpec::pc_n(p, n + 1);
    const MultiplierSpec tail = MultiplierSpec::pinf_n(p, n);
    for (double rho : {0.3, 1.0, 3.0, 9.0}) {
      const double lhs = eval_symbol(small, rho);
      const double rhs = eval_symbol(big, rho) -
                         eval_symbol(tail, rho) / std::pow(p.c, 2 * n);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("P_inf acts diagonally on a single sine mode") {
  const GridPtr g = small_grid(128, 16.0);
  SpectralField mode(g);
  mode[9] = 1.0;
  const RadialField u = inverse_sine_transform(mode);
  const RadialField pu = apply_multiplier(MultiplierSpec::pinf(params(1.0, 2.0)), u);
  const double factor = g->rho(9) * g->rho(9) / (2.0 * 2.0);
  for (int i = 0; i < u.size(); ++i)
    CHECK(pu[i] == doctest::Approx(factor * u[i]).epsilon(1e-11));
}

TEST_CASE("resolvent inverts the shifted operator") {
  const GridPtr g = small_grid();
  const RadialField u = random_smooth(g, 5);
  const PhysicalParams p = params(infinite_c);
  const RadialField v =
      apply_multiplier(MultiplierSpec::resolvent(SymbolKind::pinf, p, 1.0), u);
  RadialField w = apply_multiplier(MultiplierSpec::pinf(p), v);
  w += v;
  CHECK(l2_norm(w - u) <= 1e-12 * l2_norm(u));
}

TEST_CASE("multiplier application is linear") {
  const GridPtr g = small_grid();
  const RadialField u = random_smooth(g, 6);
  const RadialField v = random_smooth(g, 7);
  const MultiplierSpec spec = MultiplierSpec::pc(params(9.0));
  const RadialField lhs = apply_multiplier(spec, add_scaled(2.5 * u, -1.25, v));
  RadialField rhs = 2.5 * apply_multiplier(spec, u);
  rhs -= 1.25 * apply_multiplier(spec, v);
  CHECK(l2_norm(lhs - rhs) <= 1e-13 * (l2_norm(lhs) + l2_norm(rhs)));
}

TEST_CASE("operator norm bound of the remainder on a Gaussian") {
  // ||P_{c,n} f||_{H^s} <= alpha_{n+1}/(m^{2n+1} c^{2n}) ||f||_{H^{2n+2+s}}
  // for fields with spectral mass below m c / 2
  const GridPtr g = small_grid(512, 25.0);
  const RadialField f = gaussian(g);
  const double m = 1.0, c = 10.0;
  for (int n : {1, 2}) {
    const MultiplierSpec spec = MultiplierSpec::pc_n(params(c, m), n);
    for (double s : {0.0, 1.0}) {
      const double lhs = h_s_norm(apply_multiplier(spec, f), s);
      const double rhs = alpha(n + 1) /
                         (std::pow(m, 2 * n + 1) * std::pow(c, 2 * n)) *
                         h_s_norm(f, 2 * n + 2 + s);
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("remainder norms decay at the rate c^{-2n}") {
  const GridPtr g = small_grid(512, 25.0);
  const RadialField f = gaussian(g);
  const double cs[] = {10.0, 20.0, 40.0, 80.0};
  CHECK(remainder_rate(1, f, cs) == doctest::Approx(-2.0).epsilon(0.025));
  CHECK(remainder_rate(2, f, cs) == doctest::Approx(-4.0).epsilon(0.0125));
  CHECK_THROWS_AS(remainder_rate(1, RadialField(g), cs),
                  std::invalid_argument);
  const double one_c[] = {10.0};
  CHECK_THROWS_AS(remainder_rate(1, f, one_c), std::invalid_argument);
}

TEST_CASE("kinetic pairings are ordered between P_c and P_inf") {
  // <P_c u, u> <= <P_inf u, u> <= <P_c u, u> + ||Delta u||^2 / (8 m^3 c^2)
  const GridPtr g = small_grid();
  const double m = 1.0, c = 15.0;
  for (uint64_t seed : {1u, 2u, 3u}) {
    const RadialField u = random_smooth(g, seed);
    const double rel = multiplier_pairing(MultiplierSpec::pc(params(c, m)), u, u);
    const double nonrel =
        multiplier_pairing(MultiplierSpec::pinf(params(c, m)), u, u);
    const double lap =
        multiplier_pairing(MultiplierSpec::frac_lap(2.0), u, u);
    CHECK(rel <= nonrel);
    CHECK(nonrel <= rel + lap / (8.0 * std::pow(m, 3) * c * c));
  }
}

TEST_CASE("scaled T_c difference approaches -3 rho^4 / (8 m^3)") {
  const double m = 1.0, c = 100.0;
  const MultiplierSpec tc = MultiplierSpec::tc(params(c, m));
  for (double rho : {0.5, 1.0, 2.0, 5.0}) {
    const double scaled =
        c * c * (eval_symbol(tc, rho) - rho * rho / (2.0 * m));
    const double limit = -3.0 * std::pow(rho, 4) / (8.0 * std::pow(m, 3));
    CHECK(std::abs(scaled - limit) <= 0.02 * std::abs(limit));
  }
}
