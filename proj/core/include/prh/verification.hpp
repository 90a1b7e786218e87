#pragma once

#include "prh/harness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prh {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
};

struct VerifyOptions {
  int grid_n = 4096;
  double grid_r = 40.0;
  double m = 1.0;
  double lambda = 1.0;
  double solver_tol = 1e-12;
  double krylov_tol = 1e-10;
  int workers = 0;
  double c_lo = 10.0;
  double c_hi = 160.0;
  double c_ratio = 1.4142135623730951;
};

/// Shared lazily-computed state so the criteria can reuse the expensive
/// solves and sweeps.
class VerifyContext {
public:
  explicit VerifyContext(const VerifyOptions& opt);

  const VerifyOptions& options() const { return opt_; }
  const GridPtr& grid() const { return grid_; }
  const GroundStateResult& action_limit();
  const GroundStateResult& energy_limit();
  const ExpansionSeries& action_series();
  const ExpansionSeries& energy_series();
  const SweepReport& action_sweep();
  const SweepReport& energy_sweep();

private:
  VerifyOptions opt_;
  GridPtr grid_;
  std::optional<GroundStateResult> action_limit_;
  std::optional<GroundStateResult> energy_limit_;
  std::optional<ExpansionSeries> action_series_;
  std::optional<ExpansionSeries> energy_series_;
  std::optional<SweepReport> action_sweep_;
  std::optional<SweepReport> energy_sweep_;
};

/// The numbered acceptance criteria.  `which` is a sorted list drawn from
/// 1..8; fast = {1, 2, 4}.
std::vector<CriterionResult> run_criteria(VerifyContext& ctx,
                                          std::span<const int> which);
std::vector<int> fast_criteria();
std::vector<int> all_criteria();

} // namespace prh
