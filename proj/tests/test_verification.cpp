#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prh/verification.hpp"

using namespace prh;

TEST_CASE("fast criteria pass on a reduced grid") {
  VerifyOptions opt;
  opt.grid_n = 512;
  opt.grid_r = 25.0;
  opt.solver_tol = 1e-11;
  opt.krylov_tol = 1e-10;
  VerifyContext ctx(opt);
  const auto results = run_criteria(ctx, fast_criteria());
  CHECK(results.size() == 3);
  for (const CriterionResult& r : results) {
    for (const CheckResult& c : r.checks) {
      INFO(r.index, " ", c.name, ": ", c.detail);
      CHECK(c.pass);
    }
    CHECK(r.pass);
  }
}

TEST_CASE("criterion indices are validated") {
  VerifyOptions opt;
  opt.grid_n = 128;
  opt.grid_r = 15.0;
  VerifyContext ctx(opt);
  const int bad[] = {9};
  CHECK_THROWS_AS(run_criteria(ctx, bad), std::invalid_argument);
}
