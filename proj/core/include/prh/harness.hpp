#pragma once

#include "prh/expansion.hpp"

#include <string>

namespace prh {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares on (log x, log y).  Needs >= 3 strictly positive points.
FitResult fit_slope(std::span<const double> xs, std::span<const double> ys);

struct SweepConfig {
  ProblemKind kind = ProblemKind::energy;
  double m = 1.0;
  double lambda = 1.0;
  std::vector<double> c_values;        ///< strictly increasing, finite
  int order = 1;                       ///< expansion order to build
  std::vector<double> s_values = {0.0, 1.0, 2.0}; ///< Sobolev indices reported
  int grid_n = 4096;
  double grid_r = 40.0;
  SolverOptions solver;
  double krylov_tol = 1e-10;
  bool warm_start = true;
  int workers = 0;                     ///< 0 = hardware concurrency
  double noise_floor_factor = 100.0;   ///< fits exclude residuals below
                                       ///< factor * solver.tol

  static std::vector<double> geometric_c(double lo, double hi, double ratio);
};

struct SweepRecord {
  double c = 0.0;
  bool converged = false;
  int iterations = 0;
  double level = 0.0;
  double multiplier = 0.0;
  double t_c = 0.0;      ///< action kind: Nehari scale of the limit state
  double pohozaev = 0.0; ///< energy kind: Pohozaev residual
  /// residual[n][si] = || u_c - series(c, up_to = n) ||_{H^{s_i}}, n = 0..order
  std::vector<std::vector<double>> residual;
  /// |e_c - scalar series to k| and |omega_c - scalar series to k|, k = 0..order
  std::vector<double> level_resid;
  std::vector<double> multiplier_resid;
  RadialField profile; ///< kept for re-analysis (negative controls)

  explicit SweepRecord(GridPtr grid) : profile(std::move(grid)) {}
};

struct SlopeFit {
  std::string quantity;
  FitResult fit;
  int points_used = 0;
  int points_excluded = 0;
};

struct SweepReport {
  SweepConfig config;
  ExpansionSeries series;
  std::vector<SweepRecord> records;
  std::vector<SlopeFit> fits;
  // energy kind: gap diagnostics at the largest c and their predicted limits
  double energy_gap_estimate = 0.0;      ///< c^2 (e_inf - e_c)
  double multiplier_gap_estimate = 0.0;  ///< c^2 (omega_inf - omega_c)
  double energy_gap_reference = 0.0;     ///< (1/8m^3) ||Delta w_inf||^2
  double multiplier_gap_reference = 0.0; ///< -(5/8m^3) ||Delta w_inf||^2
};

/// Solves the limit problem, builds the series, then runs the c sweep.
SweepReport sweep(const SweepConfig& config);
/// Runs the c sweep against an already-built series (cache path).
SweepReport sweep(const SweepConfig& config, const ExpansionSeries& series);

/// Recomputes residuals and fits with correction zero_j (1-based) zeroed out,
/// from the profiles stored in the report.  Negative-control tool.
SweepReport refit_with_zeroed_correction(const SweepReport& report, int zero_j);

struct Expectation {
  std::string quantity;   ///< fit name, or energy_gap_limit / multiplier_gap_limit
  enum class Type { slope, limit } type = Type::slope;
  double expected = 0.0;
  double tolerance = 0.0; ///< absolute for slopes, relative for limits
};

struct Verdict {
  Expectation expectation;
  double observed = 0.0;
  bool pass = false;
  std::string note;
};

std::vector<Verdict> verify_rates(const SweepReport& report,
                                  std::span<const Expectation> expectations);

/// Name used for fitted quantities, e.g. u_resid_n0_h1 for the H^1 norm of
/// u_c - series(c, 0).
std::string residual_quantity_name(int n, double s);

} // namespace prh
