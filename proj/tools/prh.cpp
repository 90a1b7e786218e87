// Command-line front end: ground-state solves, asymptotic expansions,
// rate sweeps, and the verification suite.

#include "prh/expansion.hpp"
#include "prh/harness.hpp"
#include "prh/io.hpp"
#include "prh/verification.hpp"
#include "prh/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace prh;

namespace {

// exit codes: 0 ok, 1 verification failure, 2 usage, 3 config, 4 io,
// 5 computation
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_config = 3;
constexpr int exit_io = 4;
constexpr int exit_compute = 5;

struct CommonOpts {
  std::string kind = "energy";
  std::string c_text = "inf";
  double m = 1.0;
  double lambda = 1.0;
  int grid_n = 4096;
  double grid_r = 40.0;
  double tol = 1e-10;
  int max_iter = 100000;
  double damping = 0.5;
  std::string cache_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_c = true) {
  cmd->add_option("--kind", o.kind, "Problem kind: action | energy")
      ->check(CLI::IsMember({"action", "energy"}))
      ->capture_default_str();
  if (with_c)
    cmd->add_option("--c", o.c_text, "Speed of light, a number or 'inf'")
        ->capture_default_str();
  cmd->add_option("--m", o.m, "Particle mass")->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "Action-problem frequency")
      ->capture_default_str();
  cmd->add_option("--grid-n", o.grid_n, "Interior grid points")
      ->capture_default_str();
  cmd->add_option("--grid-r", o.grid_r, "Domain radius")->capture_default_str();
  cmd->add_option("--tol", o.tol, "Solver residual tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Solver iteration budget")
      ->capture_default_str();
  cmd->add_option("--damping", o.damping, "Picard mixing parameter")
      ->capture_default_str();
  cmd->add_option("--cache-dir", o.cache_dir,
                  "Ground-state cache directory (default: "
                  "$PRHARTREE_CACHE_DIR if set)");
}

ProblemKind parse_kind(const std::string& text) {
  return text == "action" ? ProblemKind::action : ProblemKind::energy;
}

double parse_c(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinite_c;
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("--c must be a positive number or 'inf', got '" +
                                text + "'");
  }
}

PhysicalParams make_params(const CommonOpts& o) {
  PhysicalParams p;
  p.m = o.m;
  p.lambda = o.lambda;
  p.c = parse_c(o.c_text);
  p.validate(parse_kind(o.kind) == ProblemKind::action);
  return p;
}

SolverOptions make_solver(const CommonOpts& o) {
  SolverOptions s;
  s.tol = o.tol;
  s.max_iter = o.max_iter;
  s.damping = o.damping;
  if (!(s.tol > 0.0) || s.max_iter < 1 || s.damping <= 0.0 || s.damping > 1.0)
    throw std::invalid_argument("invalid solver options (tol/max-iter/damping)");
  return s;
}

std::optional<fs::path> cache_dir(const CommonOpts& o) {
  if (!o.cache_dir.empty()) return fs::path(o.cache_dir);
  if (const char* env = std::getenv("PRHARTREE_CACHE_DIR"); env && *env)
    return fs::path(env);
  return std::nullopt;
}

std::string describe(const GroundStateResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s state: level = %.12g, multiplier = %.12g, residual = "
                "%.3g, iterations = %d",
                r.kind == ProblemKind::action ? "action" : "energy", r.level,
                r.multiplier, r.residual_l2, r.iterations);
  return buf;
}

// Limit-problem solves are cached on disk keyed by the full configuration;
// loads re-verify the stored hash and the equation residual.
GroundStateResult solve_with_cache(const GridPtr& grid,
                                   const PhysicalParams& params,
                                   ProblemKind kind, const SolverOptions& opts,
                                   const std::optional<fs::path>& cache) {
  auto solve_fresh = [&] {
    return kind == ProblemKind::action ? solve_action(grid, params, opts)
                                       : solve_energy(grid, params, opts);
  };
  if (!cache) return solve_fresh();
  char key[256];
  std::snprintf(key, sizeof key, "gs|%d|%.17g|%.17g|%.17g|%d|%.17g|%.17g",
                static_cast<int>(kind), params.m, params.lambda, params.c,
                grid->size(), grid->radius(), opts.tol);
  char name[64];
  std::snprintf(name, sizeof name, "gs-%016llx.profile",
                static_cast<unsigned long long>(fnv1a64(key)));
  const fs::path path = *cache / name;
  if (fs::exists(path)) {
    try {
      GroundStateResult r = load_profile(path);
      const double recheck = equation_residual(r);
      if (recheck <= std::max(100.0 * r.residual_l2, 1e-8)) {
        std::printf("cache hit: %s\n", path.string().c_str());
        return r;
      }
      std::fprintf(stderr, "cache entry failed residual recheck (%.3g), recomputing\n",
                   recheck);
    } catch (const IoError& e) {
      std::fprintf(stderr, "cache entry unusable (%s), recomputing\n", e.what());
    }
  }
  GroundStateResult r = solve_fresh();
  fs::create_directories(*cache);
  save_profile(path, r);
  return r;
}

int run_groundstate(const CommonOpts& o, const std::string& out) {
  const GridPtr grid = RadialGrid::create(o.grid_n, o.grid_r);
  const PhysicalParams params = make_params(o);
  const ProblemKind kind = parse_kind(o.kind);
  const SolverOptions opts = make_solver(o);
  const GroundStateResult r = params.nonrelativistic()
                                  ? solve_with_cache(grid, params, kind, opts,
                                                     cache_dir(o))
                                  : (kind == ProblemKind::action
                                         ? solve_action(grid, params, opts)
                                         : solve_energy(grid, params, opts));
  std::printf("%s\n", describe(r).c_str());
  if (kind == ProblemKind::energy)
    std::printf("pohozaev residual = %.3g\n", pohozaev_residual(r));
  if (!out.empty()) {
    save_profile(out, r);
    std::printf("profile written to %s\n", out.c_str());
  }
  return 0;
}

int run_expand(const CommonOpts& o, int order, const std::string& base_path,
               const std::string& out, double krylov_tol) {
  const ProblemKind kind = parse_kind(o.kind);
  GroundStateResult base = [&] {
    if (!base_path.empty()) {
      GroundStateResult r = load_profile(base_path);
      if (r.kind != kind)
        throw std::invalid_argument("base profile kind does not match --kind");
      const double recheck = equation_residual(r);
      if (recheck > std::max(100.0 * r.residual_l2, 1e-8))
        throw std::invalid_argument(
            "base profile fails the equation-residual recheck");
      return r;
    }
    CommonOpts limit = o;
    limit.c_text = "inf";
    const GridPtr grid = RadialGrid::create(o.grid_n, o.grid_r);
    return solve_with_cache(grid, make_params(limit), kind, make_solver(o),
                            cache_dir(o));
  }();
  const ExpansionSeries series =
      kind == ProblemKind::action
          ? build_action_expansion(base, order, krylov_tol)
          : build_energy_expansion(base, order, krylov_tol);
  std::printf("base %s\n", describe(base).c_str());
  for (int j = 1; j <= order; ++j)
    std::printf("||correction_%d||_L2 = %.6g (equation residual %.2g)\n", j,
                l2_norm(series.corrections[j - 1]),
                correction_residual(series, j));
  if (kind == ProblemKind::energy) {
    for (int j = 1; j <= order; ++j)
      std::printf("a_%d = %.12g   b_%d = %.12g\n", j, series.a[j - 1], j,
                  series.b[j - 1]);
  }
  save_series(out, series);
  std::printf("series written to %s\n", out.c_str());
  return 0;
}

int run_sweep(const CommonOpts& o, SweepConfig cfg, const std::string& out,
              bool svg) {
  cfg.kind = parse_kind(o.kind);
  cfg.m = o.m;
  cfg.lambda = o.lambda;
  cfg.grid_n = o.grid_n;
  cfg.grid_r = o.grid_r;
  cfg.solver = make_solver(o);

  const GridPtr grid = RadialGrid::create(cfg.grid_n, cfg.grid_r);
  PhysicalParams limit;
  limit.m = cfg.m;
  limit.lambda = cfg.lambda;
  limit.c = infinite_c;
  const GroundStateResult base =
      solve_with_cache(grid, limit, cfg.kind, cfg.solver, cache_dir(o));
  const ExpansionSeries series =
      cfg.kind == ProblemKind::action
          ? build_action_expansion(base, cfg.order, cfg.krylov_tol)
          : build_energy_expansion(base, cfg.order, cfg.krylov_tol);
  const SweepReport rep = sweep(cfg, series);

  for (const SlopeFit& f : rep.fits)
    std::printf("fit %-18s slope %8.4f  r2 %.6f  (%d points)\n",
                f.quantity.c_str(), f.fit.slope, f.fit.r_squared,
                f.points_used);
  if (cfg.kind == ProblemKind::energy) {
    std::printf("c^2(e_inf - e_c)         = %.8g  (limit %.8g)\n",
                rep.energy_gap_estimate, rep.energy_gap_reference);
    std::printf("c^2(omega_inf - omega_c) = %.8g  (limit %.8g)\n",
                rep.multiplier_gap_estimate, rep.multiplier_gap_reference);
  }
  save_report_csv(out + ".csv", rep);
  save_report_json(out + ".json", rep);
  std::printf("report written to %s.csv / %s.json", out.c_str(), out.c_str());
  if (svg) {
    save_report_svg(out + ".svg", rep);
    std::printf(" / %s.svg", out.c_str());
  }
  std::printf("\n");
  return 0;
}

int run_verify(const VerifyOptions& opt, const std::vector<int>& criteria) {
  VerifyContext ctx(opt);
  const auto results = run_criteria(ctx, criteria);
  int failures = 0;
  for (const CriterionResult& r : results) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                r.index, r.name.c_str(), r.seconds);
    for (const CheckResult& c : r.checks)
      std::printf("    %-52s %s  %s\n", c.name.c_str(),
                  c.pass ? "ok  " : "FAIL", c.detail.c_str());
    failures += r.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failures,
              results.size());
  return failures == 0 ? 0 : exit_verify_failed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-relativistic Hartree ground states: solvers, "
               "expansions, and rate studies"};
  app.set_version_flag("--version", version_string);
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);

  // groundstate
  auto* gs = app.add_subcommand("groundstate", "Solve one ground-state problem");
  CommonOpts gs_opts;
  std::string gs_out;
  add_common(gs, gs_opts);
  gs->add_option("--out", gs_out, "Write the profile to this path");

  // expand
  auto* ex = app.add_subcommand("expand", "Build the correction series");
  CommonOpts ex_opts;
  int ex_order = 2;
  double ex_krylov = 1e-10;
  std::string ex_base, ex_out = "series.prh";
  add_common(ex, ex_opts, false);
  ex->add_option("--order", ex_order, "Series order n >= 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ex->add_option("--base", ex_base, "Reuse a saved limit profile");
  ex->add_option("--krylov-tol", ex_krylov, "Linearized-solve tolerance")
      ->capture_default_str();
  ex->add_option("--out", ex_out, "Series output path")->capture_default_str();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run a c sweep and fit the rates");
  CommonOpts sw_opts;
  SweepConfig sw_cfg;
  double sw_cmin = 10.0, sw_cmax = 160.0, sw_ratio = std::sqrt(2.0);
  std::vector<double> sw_clist;
  std::string sw_out = "sweep";
  bool sw_svg = false, sw_cold = false;
  add_common(sw, sw_opts, false);
  sw->add_option("--c-min", sw_cmin, "Smallest c")->capture_default_str();
  sw->add_option("--c-max", sw_cmax, "Largest c")->capture_default_str();
  sw->add_option("--c-ratio", sw_ratio, "Geometric ratio of the c grid")
      ->capture_default_str();
  sw->add_option("--c", sw_clist, "Explicit c list (overrides the range)");
  sw->add_option("--order", sw_cfg.order, "Series order")
      ->capture_default_str();
  sw->add_option("--s", sw_cfg.s_values, "Sobolev indices to report")
      ->capture_default_str();
  sw->add_option("--krylov-tol", sw_cfg.krylov_tol,
                 "Linearized-solve tolerance")
      ->capture_default_str();
  sw->add_option("--workers", sw_cfg.workers, "Parallel solves (0 = auto)")
      ->capture_default_str();
  sw->add_flag("--no-warm-start", sw_cold, "Disable series warm starts");
  sw->add_flag("--svg", sw_svg, "Also emit a log-log plot");
  sw->add_option("--out", sw_out, "Output path prefix")->capture_default_str();

  // verify
  auto* vf = app.add_subcommand("verify", "Run the acceptance criteria");
  VerifyOptions vf_opt;
  std::string vf_suite = "fast";
  std::vector<int> vf_criteria;
  vf->add_option("--suite", vf_suite, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  vf->add_option("--criteria", vf_criteria, "Explicit criterion list (1..8)");
  vf->add_option("--grid-n", vf_opt.grid_n, "Interior grid points")
      ->capture_default_str();
  vf->add_option("--grid-r", vf_opt.grid_r, "Domain radius")
      ->capture_default_str();
  vf->add_option("--workers", vf_opt.workers, "Sweep worker threads")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (gs->parsed()) return run_groundstate(gs_opts, gs_out);
    if (ex->parsed())
      return run_expand(ex_opts, ex_order, ex_base, ex_out, ex_krylov);
    if (sw->parsed()) {
      sw_cfg.c_values = sw_clist.empty()
                            ? SweepConfig::geometric_c(sw_cmin, sw_cmax, sw_ratio)
                            : sw_clist;
      sw_cfg.warm_start = !sw_cold;
      return run_sweep(sw_opts, sw_cfg, sw_out, sw_svg);
    }
    if (vf->parsed()) {
      const std::vector<int> criteria =
          !vf_criteria.empty() ? vf_criteria
          : vf_suite == "fast" ? fast_criteria()
                               : all_criteria();
      return run_verify(vf_opt, criteria);
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return exit_io;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "computation failed: %s (iterations = %d, residual = %.3g)\n",
                 e.what(), e.iterations, e.residual);
    return exit_compute;
  } catch (const SubcriticalError& e) {
    std::fprintf(stderr, "computation refused: %s\n", e.what());
    return exit_compute;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return exit_config;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_compute;
  }
  return exit_usage;
}
