#include "prh/ground_state.hpp"

#include "prh/multipliers.hpp"
#include "prh/transform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace prh {

namespace {

RadialField gaussian_seed(const GridPtr& grid) {
  RadialField u(grid);
  for (int i = 0; i < u.size(); ++i) {
    const double r = grid->r(i);
    u[i] = std::exp(-0.5 * r * r);
  }
  return u;
}

void normalize_sign(RadialField& u) {
  double moment = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double r = u.grid().r(i);
    moment += u[i] * r * r;
  }
  if (moment < 0.0) u *= -1.0;
}

std::string describe_c(const PhysicalParams& p) {
  std::ostringstream os;
  if (p.nonrelativistic())
    os << "c = infinity";
  else
    os << "c = " << p.c;
  return os.str();
}

} // namespace

GroundStateResult solve_action(const GridPtr& grid, const PhysicalParams& params,
                               const SolverOptions& opts) {
  params.validate(true);
  const double lambda = params.lambda;
  const MultiplierSpec kin = MultiplierSpec::kinetic(params);
  const double w = spectral_weight(*grid);

  RadialField u(grid);
  if (opts.initial_guess) {
    detail::require_same_grid(opts.initial_guess->grid(), *grid);
    u = *opts.initial_guess;
  } else {
    // Gaussian seed scaled onto the Nehari manifold
    u = gaussian_seed(grid);
    const SpectralField ut = sine_transform(u);
    const double q = multiplier_pairing(kin, ut, ut) +
                     lambda * inner_product(u, u);
    const double h = hartree_energy(u);
    u *= std::sqrt(q / h);
  }
  const double initial_norm = l2_norm(u);

  std::vector<double> symbol(grid->size());
  for (int j = 0; j < grid->size(); ++j)
    symbol[j] = eval_symbol(kin, grid->rho(j));

  // The spectral coefficients are the primary iterate: the resolvent division
  // keeps their high-frequency tail at the level of the nonlinearity over the
  // symbol, so the residual diagnostic is not swamped by transform round-off
  // amplified with P(rho).
  SpectralField ut = sine_transform(u);
  double step = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    const RadialField nu = hartree_nonlinearity(u);
    const SpectralField nut = sine_transform(nu);

    double res_sq = 0.0;
    for (int j = 0; j < grid->size(); ++j) {
      const double rj = (symbol[j] + lambda) * ut[j] - nut[j];
      res_sq += rj * rj;
    }
    residual = std::sqrt(w * res_sq);
    if (residual < opts.tol && step < opts.tol) break;

    SpectralField vt(grid);
    double qv = 0.0;
    for (int j = 0; j < grid->size(); ++j) {
      vt[j] = nut[j] / (symbol[j] + lambda);
      qv += (symbol[j] + lambda) * vt[j] * vt[j];
    }
    qv *= w;
    const RadialField v = inverse_sine_transform(vt);
    const double hv = hartree_energy(v);
    if (!(hv > 1e-300))
      throw ConvergenceError("solve_action: degenerate iterate with H(v) = 0",
                             iter, residual);
    const double scale = std::sqrt(qv / hv);

    const double theta = opts.damping;
    double step_sq = 0.0;
    for (int j = 0; j < grid->size(); ++j) {
      const double delta = theta * (scale * vt[j] - ut[j]);
      step_sq += delta * delta;
      ut[j] += delta;
    }
    step = std::sqrt(w * step_sq);
    u = add_scaled((1.0 - theta) * u, theta * scale, v);

    const double norm = l2_norm(u);
    if (!std::isfinite(norm) || norm > 1e6 * initial_norm)
      throw ConvergenceError("solve_action: iteration diverged (" +
                                 describe_c(params) + ")",
                             iter, residual);
  }
  if (iter >= opts.max_iter)
    throw ConvergenceError("solve_action: not converged within max iterations (" +
                               describe_c(params) + ")",
                           iter, residual);

  normalize_sign(u);
  GroundStateResult res{u,
                        ProblemKind::action,
                        params,
                        action_value(u, params),
                        lambda,
                        residual,
                        iter,
                        true,
                        0.0};
  return res;
}

GroundStateResult solve_energy(const GridPtr& grid, const PhysicalParams& params,
                               const SolverOptions& opts) {
  params.validate(false);
  if (!params.nonrelativistic() && params.c < opts.c_min)
    throw SubcriticalError(
        "solve_energy: " + describe_c(params) +
        " is below the configured c_min; the energy problem may be unbounded "
        "below there");
  const MultiplierSpec kin = MultiplierSpec::kinetic(params);
  const double w = spectral_weight(*grid);

  RadialField u(grid);
  if (opts.initial_guess) {
    detail::require_same_grid(opts.initial_guess->grid(), *grid);
    u = *opts.initial_guess;
    if (!(l2_norm(u) > 0.0))
      throw std::invalid_argument("solve_energy: zero initial guess");
  } else {
    u = gaussian_seed(grid);
  }
  u *= 1.0 / l2_norm(u);

  std::vector<double> symbol(grid->size());
  for (int j = 0; j < grid->size(); ++j)
    symbol[j] = eval_symbol(kin, grid->rho(j));

  SpectralField ut = sine_transform(u);
  double residual = std::numeric_limits<double>::infinity();
  double mu = 0.0;
  double energy = std::numeric_limits<double>::infinity();
  double max_increase = 0.0;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    const RadialField nu = hartree_nonlinearity(u);
    const SpectralField nut = sine_transform(nu);
    const double hart = inner_product(nu, u); // H(u)
    double kin_pair = 0.0;
    for (int j = 0; j < grid->size(); ++j)
      kin_pair += symbol[j] * ut[j] * ut[j];
    kin_pair *= w;
    mu = hart - kin_pair;

    const double e_now = kin_pair - 0.5 * hart;
    if (!std::isfinite(e_now) || e_now < -1e10)
      throw SubcriticalError("solve_energy: energy collapsing, " +
                             describe_c(params) + " appears subcritical");
    if (std::isfinite(energy))
      max_increase = std::max(max_increase, e_now - energy);
    energy = e_now;

    double res_sq = 0.0;
    for (int j = 0; j < grid->size(); ++j) {
      const double rj = (symbol[j] + mu) * ut[j] - nut[j];
      res_sq += rj * rj;
    }
    residual = std::sqrt(w * res_sq);
    if (residual < opts.tol) break;

    const double sigma = std::max(opts.sigma_factor * mu, opts.sigma_min);
    SpectralField next(grid);
    double norm_sq = 0.0;
    for (int j = 0; j < grid->size(); ++j) {
      next[j] = ((sigma - mu) * ut[j] + nut[j]) / (symbol[j] + sigma);
      norm_sq += next[j] * next[j];
    }
    const double inv_norm = 1.0 / std::sqrt(w * norm_sq);
    for (int j = 0; j < grid->size(); ++j) next[j] *= inv_norm;
    ut = std::move(next);
    u = inverse_sine_transform(ut);
  }
  if (iter >= opts.max_iter)
    throw ConvergenceError("solve_energy: not converged within max iterations (" +
                               describe_c(params) + ")",
                           iter, residual);

  normalize_sign(u);
  GroundStateResult res{u,
                        ProblemKind::energy,
                        params,
                        energy_value(u, params),
                        mu,
                        residual,
                        iter,
                        true,
                        max_increase};
  return res;
}

double pohozaev_residual(const GroundStateResult& res) {
  if (res.kind != ProblemKind::energy)
    throw std::invalid_argument("pohozaev_residual: energy-kind result required");
  const MultiplierSpec spec = res.params.nonrelativistic()
                                  ? MultiplierSpec::pinf(res.params)
                                  : MultiplierSpec::tc(res.params);
  return multiplier_pairing(spec, res.profile, res.profile) + res.level;
}

double equation_residual(const GroundStateResult& res) {
  const double freq = res.kind == ProblemKind::action ? res.params.lambda
                                                      : res.multiplier;
  const MultiplierSpec kin = MultiplierSpec::kinetic(res.params);
  const SpectralField ut = sine_transform(res.profile);
  const SpectralField nut = sine_transform(hartree_nonlinearity(res.profile));
  const RadialGrid& g = res.profile.grid();
  double acc = 0.0;
  for (int j = 0; j < ut.size(); ++j) {
    const double rj = (eval_symbol(kin, g.rho(j)) + freq) * ut[j] - nut[j];
    acc += rj * rj;
  }
  return std::sqrt(spectral_weight(g) * acc);
}

double nehari_scale(const RadialField& u_inf, const PhysicalParams& params) {
  params.validate(true);
  if (params.nonrelativistic())
    throw std::invalid_argument("nehari_scale: finite c required");
  const double h = hartree_energy(u_inf);
  if (!(h > 1e-300))
    throw std::invalid_argument("nehari_scale: H(u_inf) vanishes");
  const SpectralField ut = sine_transform(u_inf);
  const double q = multiplier_pairing(MultiplierSpec::pc(params), ut, ut) +
                   params.lambda * inner_product(u_inf, u_inf);
  return std::sqrt(q / h);
}

} // namespace prh
