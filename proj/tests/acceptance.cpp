// Acceptance suite: runs the numbered verification criteria at the default
// configuration (m = 1, lambda = 1, unit mass, N = 4096, R = 40) and prints
// one PASS/FAIL line per criterion.  Exit code is the number of failures.

#include "prh/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
  CLI::App app{"prhartree acceptance suite"};
  prh::VerifyOptions opt;
  std::vector<int> criteria = prh::all_criteria();
  app.add_option("--criteria", criteria, "Subset of criteria (1..8) to run");
  app.add_option("--grid-n", opt.grid_n, "Interior grid points");
  app.add_option("--grid-r", opt.grid_r, "Domain radius");
  app.add_option("--workers", opt.workers, "Sweep worker threads (0 = auto)");
  CLI11_PARSE(app, argc, argv);

  prh::VerifyContext ctx(opt);
  int failures = 0;
  try {
    const auto results = prh::run_criteria(ctx, criteria);
    for (const prh::CriterionResult& r : results) {
      std::printf("[%s] criterion %d: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                  r.index, r.name.c_str(), r.seconds);
      for (const prh::CheckResult& c : r.checks)
        std::printf("    %-52s %s  %s\n", c.name.c_str(),
                    c.pass ? "ok  " : "FAIL", c.detail.c_str());
      failures += r.pass ? 0 : 1;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - failures,
                results.size());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 99;
  }
  return failures;
}
