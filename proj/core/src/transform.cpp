#include "prh/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>

namespace prh {

namespace {

// FFTW RODFT00 computes Y_k = 2 sum_j X_j sin(pi (j+1)(k+1)/(n+1)).  Plans are
// cached per size; the planner is not thread-safe, execution on distinct
// arrays is.  FFTW_UNALIGNED lets plans run on std::vector storage.
class DstPlans {
public:
  static DstPlans& instance() {
    static DstPlans p;
    return p;
  }

  void execute(int n, const double* in, double* out) {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = plans_.find(n);
      if (it == plans_.end()) {
        std::vector<double> a(n), b(n);
        plan = fftw_plan_r2r_1d(n, a.data(), b.data(), FFTW_RODFT00,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("FFTW failed to create DST-I plan");
        plans_.emplace(n, plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_r2r(plan, const_cast<double*>(in), out);
  }

private:
  DstPlans() = default;
  ~DstPlans() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }
  std::mutex mutex_;
  std::map<int, fftw_plan> plans_;
};

} // namespace

SpectralField sine_transform(const RadialField& u) {
  const RadialGrid& g = u.grid();
  const int n = g.size();
  std::vector<double> v(n), out(n);
  for (int i = 0; i < n; ++i) v[i] = g.r(i) * u[i];
  DstPlans::instance().execute(n, v.data(), out.data());
  const double scale = 0.5 * g.dr();
  double peak = 0.0;
  for (double& x : out) {
    x *= scale;
    peak = std::max(peak, std::abs(x));
  }
  // Coefficients within a few eps of the peak are transform round-off, not
  // signal; clearing them keeps high-order symbols (rho^{2n+2} growth) from
  // amplifying that noise into every downstream residual.
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * peak;
  for (double& x : out)
    if (std::abs(x) < floor) x = 0.0;
  return SpectralField(u.grid_ptr(), std::move(out));
}

RadialField inverse_sine_transform(const SpectralField& s) {
  const RadialGrid& g = s.grid();
  const int n = g.size();
  std::vector<double> out(n);
  DstPlans::instance().execute(n, s.coeffs().data(), out.data());
  const double scale = 1.0 / g.radius();
  for (int i = 0; i < n; ++i) out[i] *= scale / g.r(i);
  return RadialField(s.grid_ptr(), std::move(out));
}

double spectral_weight(const RadialGrid& g) {
  return 8.0 * std::numbers::pi / g.radius();
}

double h_s_norm(const SpectralField& u, double s) {
  if (s < 0.0) throw std::invalid_argument("h_s_norm: order s must be >= 0");
  const RadialGrid& g = u.grid();
  double acc = 0.0;
  if (s == 0.0) {
    for (int j = 0; j < u.size(); ++j) acc += u[j] * u[j];
  } else {
    for (int j = 0; j < u.size(); ++j) {
      const double rho = g.rho(j);
      acc += std::pow(1.0 + rho * rho, s) * u[j] * u[j];
    }
  }
  return std::sqrt(spectral_weight(g) * acc);
}

double h_s_norm(const RadialField& u, double s) {
  return h_s_norm(sine_transform(u), s);
}

double evaluate_at(const SpectralField& u, double r) {
  if (r < 0.0) throw std::invalid_argument("evaluate_at: r must be >= 0");
  const RadialGrid& g = u.grid();
  double acc = 0.0;
  if (r == 0.0) {
    // sin(rho r)/r -> rho
    for (int j = 0; j < u.size(); ++j) acc += u[j] * g.rho(j);
  } else {
    for (int j = 0; j < u.size(); ++j) acc += u[j] * std::sin(g.rho(j) * r);
    acc /= r;
  }
  return 2.0 / g.radius() * acc;
}

RadialField resample(const RadialField& u, const GridPtr& target) {
  const SpectralField s = sine_transform(u);
  RadialField out(target);
  for (int i = 0; i < out.size(); ++i) out[i] = evaluate_at(s, target->r(i));
  return out;
}

} // namespace prh
