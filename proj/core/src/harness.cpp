#include "prh/harness.hpp"

#include "prh/multipliers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace prh {

FitResult fit_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("fit_slope: size mismatch");
  if (xs.size() < 3)
    throw std::invalid_argument("fit_slope: need at least 3 points");
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) ||
        !std::isfinite(ys[i]))
      throw std::invalid_argument("fit_slope: points must be positive and finite");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  FitResult f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (size_t i = 0; i < lx.size(); ++i) {
    const double fit = f.intercept + f.slope * lx[i];
    ss_res += (ly[i] - fit) * (ly[i] - fit);
    ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
  }
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

std::vector<double> SweepConfig::geometric_c(double lo, double hi,
                                             double ratio) {
  if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0))
    throw std::invalid_argument("geometric_c: need 0 < lo <= hi and ratio > 1");
  std::vector<double> out;
  for (double c = lo; c <= hi * (1.0 + 1e-12); c *= ratio) out.push_back(c);
  return out;
}

std::string residual_quantity_name(int n, double s) {
  std::ostringstream os;
  os << "u_resid_n" << n << "_h";
  if (s == static_cast<int>(s))
    os << static_cast<int>(s);
  else
    os << s;
  return os.str();
}

namespace {

void validate_config(const SweepConfig& config) {
  if (config.c_values.empty())
    throw std::invalid_argument("sweep: empty c list");
  for (size_t i = 0; i < config.c_values.size(); ++i) {
    if (!(config.c_values[i] > 0.0) || !std::isfinite(config.c_values[i]))
      throw std::invalid_argument("sweep: c values must be finite and > 0");
    if (i > 0 && config.c_values[i] <= config.c_values[i - 1])
      throw std::invalid_argument("sweep: c values must be strictly increasing");
  }
  if (config.order < 0) throw std::invalid_argument("sweep: order must be >= 0");
  for (double s : config.s_values)
    if (s < 0.0) throw std::invalid_argument("sweep: Sobolev indices must be >= 0");
}

SweepRecord analyze_one(const SweepConfig& config, const ExpansionSeries& series,
                        const GroundStateResult& res) {
  SweepRecord rec(res.profile.grid_ptr());
  rec.c = res.params.c;
  rec.converged = res.converged;
  rec.iterations = res.iterations;
  rec.level = res.level;
  rec.multiplier = res.multiplier;
  rec.profile = res.profile;
  rec.residual.assign(config.order + 1, {});
  for (int n = 0; n <= config.order; ++n) {
    const RadialField diff = res.profile - eval_series(series, rec.c, n);
    const SpectralField dt = sine_transform(diff);
    rec.residual[n].reserve(config.s_values.size());
    for (double s : config.s_values) rec.residual[n].push_back(h_s_norm(dt, s));
  }
  if (config.kind == ProblemKind::energy) {
    for (int k = 0; k <= config.order; ++k) {
      rec.level_resid.push_back(std::abs(
          res.level - eval_scalar_series(series.base.level, series.a, rec.c, k)));
      rec.multiplier_resid.push_back(
          std::abs(res.multiplier -
                   eval_scalar_series(series.base.multiplier, series.b, rec.c, k)));
    }
    rec.pohozaev = pohozaev_residual(res);
  } else {
    rec.t_c = nehari_scale(series.base.profile, res.params);
  }
  return rec;
}

void fit_report(SweepReport& rep) {
  const SweepConfig& config = rep.config;
  rep.fits.clear();
  const double floor = config.noise_floor_factor * config.solver.tol;
  auto fit_quantity = [&](const std::string& name, auto&& value_of) {
    std::vector<double> xs, ys;
    int excluded = 0;
    for (const SweepRecord& r : rep.records) {
      const double v = value_of(r);
      if (v > floor) {
        xs.push_back(r.c);
        ys.push_back(v);
      } else {
        ++excluded;
      }
    }
    if (xs.size() < 3) return; // too few points above the noise floor
    SlopeFit sf;
    sf.quantity = name;
    sf.fit = fit_slope(xs, ys);
    sf.points_used = static_cast<int>(xs.size());
    sf.points_excluded = excluded;
    rep.fits.push_back(std::move(sf));
  };

  for (int n = 0; n <= config.order; ++n)
    for (size_t si = 0; si < config.s_values.size(); ++si)
      fit_quantity(residual_quantity_name(n, config.s_values[si]),
                   [&](const SweepRecord& r) { return r.residual[n][si]; });
  if (config.kind == ProblemKind::energy) {
    for (int k = 0; k <= config.order; ++k) {
      fit_quantity("e_resid_n" + std::to_string(k),
                   [&](const SweepRecord& r) { return r.level_resid[k]; });
      fit_quantity("omega_resid_n" + std::to_string(k),
                   [&](const SweepRecord& r) { return r.multiplier_resid[k]; });
    }
  } else {
    fit_quantity("tc_gap",
                 [&](const SweepRecord& r) { return std::abs(r.t_c - 1.0); });
  }

  if (config.kind == ProblemKind::energy && !rep.records.empty()) {
    const SweepRecord& last = rep.records.back();
    const double c2 = last.c * last.c;
    rep.energy_gap_estimate = c2 * (rep.series.base.level - last.level);
    rep.multiplier_gap_estimate =
        c2 * (rep.series.base.multiplier - last.multiplier);
    const RadialField& w = rep.series.base.profile;
    const double lap2 =
        multiplier_pairing(MultiplierSpec::frac_lap(2.0), w, w);
    const double m = config.m;
    rep.energy_gap_reference = lap2 / (8.0 * m * m * m);
    rep.multiplier_gap_reference = -5.0 * lap2 / (8.0 * m * m * m);
  }
}

} // namespace

SweepReport sweep(const SweepConfig& config) {
  validate_config(config);
  const GridPtr grid = RadialGrid::create(config.grid_n, config.grid_r);
  PhysicalParams params;
  params.m = config.m;
  params.lambda = config.lambda;
  params.c = infinite_c;
  const GroundStateResult base =
      config.kind == ProblemKind::action
          ? solve_action(grid, params, config.solver)
          : solve_energy(grid, params, config.solver);
  const ExpansionSeries series =
      config.kind == ProblemKind::action
          ? build_action_expansion(base, config.order, config.krylov_tol)
          : build_energy_expansion(base, config.order, config.krylov_tol);
  return sweep(config, series);
}

SweepReport sweep(const SweepConfig& config, const ExpansionSeries& series) {
  validate_config(config);
  if (series.order < config.order)
    throw std::invalid_argument("sweep: series order below requested order");
  if (series.kind != config.kind)
    throw std::invalid_argument("sweep: series kind does not match config");
  const GridPtr grid = series.base.profile.grid_ptr();
  if (grid->size() != config.grid_n || grid->radius() != config.grid_r)
    throw std::invalid_argument("sweep: series grid does not match config");

  SweepReport rep{config, series, {}, {}, 0, 0, 0, 0};
  const size_t nc = config.c_values.size();
  std::vector<std::optional<SweepRecord>> slots(nc);
  std::vector<std::exception_ptr> errors(nc);

  auto run_one = [&](size_t i) {
    PhysicalParams p;
    p.m = config.m;
    p.lambda = config.lambda;
    p.c = config.c_values[i];
    SolverOptions opts = config.solver;
    if (config.warm_start)
      opts.initial_guess = eval_series(series, p.c, config.order);
    const GroundStateResult res = config.kind == ProblemKind::action
                                      ? solve_action(grid, p, opts)
                                      : solve_energy(grid, p, opts);
    slots[i] = analyze_one(config, series, res);
  };

  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(nc));
  if (workers == 1) {
    for (size_t i = 0; i < nc; ++i) {
      try {
        run_one(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<size_t> next{0};
    auto body = [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= nc) return;
        try {
          run_one(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
  }

  for (size_t i = 0; i < nc; ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << "sweep: solve failed at c = " << config.c_values[i] << ": "
           << e.what();
        throw std::runtime_error(os.str());
      }
    }
    rep.records.push_back(std::move(*slots[i]));
  }
  fit_report(rep);
  return rep;
}

SweepReport refit_with_zeroed_correction(const SweepReport& report, int zero_j) {
  if (zero_j < 1 || zero_j > report.series.order)
    throw std::invalid_argument("refit: correction index out of range");
  SweepReport rep = report;
  rep.series.corrections[zero_j - 1] *= 0.0;
  for (SweepRecord& rec : rep.records) {
    for (int n = 0; n <= rep.config.order; ++n) {
      const RadialField diff = rec.profile - eval_series(rep.series, rec.c, n);
      const SpectralField dt = sine_transform(diff);
      for (size_t si = 0; si < rep.config.s_values.size(); ++si)
        rec.residual[n][si] = h_s_norm(dt, rep.config.s_values[si]);
    }
  }
  fit_report(rep);
  return rep;
}

std::vector<Verdict> verify_rates(const SweepReport& report,
                                  std::span<const Expectation> expectations) {
  std::vector<Verdict> verdicts;
  for (const Expectation& e : expectations) {
    Verdict v{e, 0.0, false, {}};
    std::ostringstream note;
    if (e.type == Expectation::Type::slope) {
      const SlopeFit* found = nullptr;
      for (const SlopeFit& f : report.fits)
        if (f.quantity == e.quantity) found = &f;
      if (!found) {
        note << "no fitted quantity '" << e.quantity
             << "' (too few points above the noise floor?)";
      } else {
        v.observed = found->fit.slope;
        v.pass = std::abs(v.observed - e.expected) <= e.tolerance;
        note << "slope " << v.observed << " vs " << e.expected << " +- "
             << e.tolerance << " (" << found->points_used << " points";
        if (found->points_excluded > 0)
          note << ", " << found->points_excluded << " below noise floor";
        note << ", r2 = " << found->fit.r_squared << ")";
      }
    } else {
      double reference = 0.0;
      if (e.quantity == "energy_gap_limit") {
        v.observed = report.energy_gap_estimate;
        reference = e.expected;
      } else if (e.quantity == "multiplier_gap_limit") {
        v.observed = report.multiplier_gap_estimate;
        reference = e.expected;
      } else {
        note << "unknown limit quantity '" << e.quantity << "'";
        v.note = note.str();
        verdicts.push_back(std::move(v));
        continue;
      }
      v.pass = std::abs(v.observed - reference) <=
               e.tolerance * std::abs(reference);
      note << "limit " << v.observed << " vs " << reference
           << " (rel tol " << e.tolerance << ")";
    }
    v.note = note.str();
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

} // namespace prh
