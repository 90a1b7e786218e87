#include "prh/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace prh {

namespace {

constexpr int kMaxAlpha = 512;

// Tail of the Taylor series of sqrt(1+t)-1 starting at term n+1, times m c^2.
// Terms alternate and decrease for t <= 1, so the partial sums bracket the
// value and the computed sign is exact.  Used for t <= 1/4 where the direct
// symbol-minus-partial-sum form loses the sign to cancellation.
double taylor_tail(int n, double t, double mc2) {
  double term = alpha(n + 1) * std::pow(t, n + 1); // magnitude of first term
  double sum = 0.0;
  double sign = (n % 2 == 0) ? 1.0 : -1.0; // sign of (-1)^{(n+1)-1}
  for (int k = n + 1; k < kMaxAlpha; ++k) {
    sum += sign * term;
    if (term <= 1e-18 * std::abs(sum)) break;
    term *= t * (2.0 * k - 1.0) / (2.0 * k + 2.0);
    sign = -sign;
  }
  return mc2 * sum;
}

// P_c minus the first n Taylor terms, by compensated summation of the partial
// sum followed by the difference.  Valid for all rho; used away from the
// series regime.
double pc_n_direct(int n, double rho, double m, double c) {
  const double mc2 = m * c * c;
  const double t = (rho / (m * c)) * (rho / (m * c));
  // Kahan summation of mc^2 * sum_{k=1}^n (-1)^{k-1} alpha_k t^k
  double sum = 0.0, comp = 0.0;
  double term = alpha(1) * t * mc2;
  double sign = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double y = sign * term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    term *= t * (2.0 * k - 1.0) / (2.0 * k + 2.0);
    sign = -sign;
  }
  const double pc = (c * rho) * (c * rho) /
                    (std::sqrt(c * c * rho * rho + mc2 * mc2) + mc2);
  return pc - sum;
}

} // namespace

double alpha(int k) {
  if (k < 1) throw std::invalid_argument("alpha: index must be >= 1");
  if (k > kMaxAlpha) throw std::invalid_argument("alpha: index too large");
  double a = 0.5;
  for (int j = 1; j < k; ++j) a *= (2.0 * j - 1.0) / (2.0 * j + 2.0);
  return a;
}

MultiplierSpec MultiplierSpec::pc(const PhysicalParams& p) {
  MultiplierSpec s;
  s.kind = SymbolKind::pc;
  s.params = p;
  s.validate();
  return s;
}

MultiplierSpec MultiplierSpec::pinf(const PhysicalParams& p) {
  MultiplierSpec s;
  s.kind = SymbolKind::pinf;
  s.params = p;
  s.validate();
  return s;
}

MultiplierSpec MultiplierSpec::pinf_n(const PhysicalParams& p, int n) {
  MultiplierSpec s;
  s.kind = SymbolKind::pinf_n;
  s.params = p;
  s.order = n;
  s.validate();
  return s;
}

MultiplierSpec MultiplierSpec::pc_n(const PhysicalParams& p, int n) {
  MultiplierSpec s;
  s.kind = SymbolKind::pc_n;
  s.params = p;
  s.order = n;
  s.validate();
  return s;
}

MultiplierSpec MultiplierSpec::tc(const PhysicalParams& p) {
  MultiplierSpec s;
  s.kind = SymbolKind::tc;
  s.params = p;
  s.validate();
  return s;
}

MultiplierSpec MultiplierSpec::frac_lap(double p) {
  MultiplierSpec s;
  s.kind = SymbolKind::frac_lap;
  s.power = p;
  s.validate();
  return s;
}

MultiplierSpec MultiplierSpec::resolvent(SymbolKind base_kind,
                                         const PhysicalParams& p, double mu) {
  MultiplierSpec s;
  s.kind = SymbolKind::resolvent;
  s.base = base_kind;
  s.params = p;
  s.shift = mu;
  s.validate();
  return s;
}

MultiplierSpec MultiplierSpec::kinetic(const PhysicalParams& p) {
  return p.nonrelativistic() ? pinf(p) : pc(p);
}

MultiplierSpec MultiplierSpec::kinetic_resolvent(const PhysicalParams& p,
                                                 double mu) {
  return resolvent(p.nonrelativistic() ? SymbolKind::pinf : SymbolKind::pc, p,
                   mu);
}

void MultiplierSpec::validate() const {
  switch (kind) {
    case SymbolKind::pc:
    case SymbolKind::tc:
      params.validate();
      if (params.nonrelativistic())
        throw std::invalid_argument("multiplier requires finite c");
      break;
    case SymbolKind::pinf:
      params.validate();
      break;
    case SymbolKind::pinf_n:
      params.validate();
      if (order < 0) throw std::invalid_argument("pinf_n: order must be >= 0");
      break;
    case SymbolKind::pc_n:
      params.validate();
      if (params.nonrelativistic())
        throw std::invalid_argument("pc_n: rejected for c = infinity");
      if (order < 0) throw std::invalid_argument("pc_n: order must be >= 0");
      break;
    case SymbolKind::frac_lap:
      if (power < 0.0 || !std::isfinite(power))
        throw std::invalid_argument("frac_lap: power must be finite and >= 0");
      break;
    case SymbolKind::resolvent:
      if (base != SymbolKind::pc && base != SymbolKind::pinf)
        throw std::invalid_argument("resolvent: base must be pc or pinf");
      params.validate();
      if (base == SymbolKind::pc && params.nonrelativistic())
        throw std::invalid_argument("resolvent: pc base requires finite c");
      if (!(shift > 0.0) || !std::isfinite(shift))
        throw std::invalid_argument("resolvent: shift must be finite and > 0");
      break;
  }
}

double eval_symbol(const MultiplierSpec& spec, double rho) {
  if (rho < 0.0) throw std::invalid_argument("eval_symbol: rho must be >= 0");
  const double m = spec.params.m;
  const double c = spec.params.c;
  switch (spec.kind) {
    case SymbolKind::pc: {
      // cancellation-safe form of sqrt(c^2 rho^2 + m^2 c^4) - m c^2
      const double mc2 = m * c * c;
      return (c * rho) * (c * rho) /
             (std::sqrt(c * c * rho * rho + mc2 * mc2) + mc2);
    }
    case SymbolKind::pinf:
      return rho * rho / (2.0 * m);
    case SymbolKind::pinf_n: {
      const int n = spec.order;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      return sign * alpha(n + 1) * std::pow(rho, 2 * n + 2) /
             std::pow(m, 2 * n + 1);
    }
    case SymbolKind::pc_n: {
      const double t = (rho / (m * c)) * (rho / (m * c));
      if (t <= 0.25) return taylor_tail(spec.order, t, m * c * c);
      return pc_n_direct(spec.order, rho, m, c);
    }
    case SymbolKind::tc: {
      MultiplierSpec base = spec;
      base.kind = SymbolKind::pc;
      const double t = rho / (m * c);
      return eval_symbol(base, rho) / std::sqrt(t * t + 1.0);
    }
    case SymbolKind::frac_lap:
      return std::pow(rho * rho, spec.power);
    case SymbolKind::resolvent: {
      MultiplierSpec base = spec;
      base.kind = spec.base;
      return 1.0 / (eval_symbol(base, rho) + spec.shift);
    }
  }
  throw std::logic_error("eval_symbol: unhandled kind");
}

SpectralField apply_multiplier(const MultiplierSpec& spec,
                               const SpectralField& u) {
  spec.validate();
  const RadialGrid& g = u.grid();
  SpectralField out(u.grid_ptr());
  for (int j = 0; j < u.size(); ++j)
    out[j] = eval_symbol(spec, g.rho(j)) * u[j];
  return out;
}

RadialField apply_multiplier(const MultiplierSpec& spec, const RadialField& u) {
  return inverse_sine_transform(apply_multiplier(spec, sine_transform(u)));
}

double multiplier_pairing(const MultiplierSpec& spec, const SpectralField& u,
                          const SpectralField& v) {
  spec.validate();
  return spectral_pairing(u, v,
                          [&](double rho) { return eval_symbol(spec, rho); });
}

double multiplier_pairing(const MultiplierSpec& spec, const RadialField& u,
                          const RadialField& v) {
  return multiplier_pairing(spec, sine_transform(u), sine_transform(v));
}

double remainder_rate(int n, const RadialField& f,
                      std::span<const double> c_values, double m) {
  if (c_values.size() < 2)
    throw std::invalid_argument("remainder_rate: need at least two c values");
  const SpectralField ft = sine_transform(f);
  std::vector<double> lx, ly;
  lx.reserve(c_values.size());
  ly.reserve(c_values.size());
  for (double c : c_values) {
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument("remainder_rate: c values must be finite, > 0");
    PhysicalParams p;
    p.m = m;
    p.c = c;
    const MultiplierSpec spec = MultiplierSpec::pc_n(p, n);
    const double norm = h_s_norm(apply_multiplier(spec, ft), 0.0);
    if (!(norm > 0.0))
      throw std::invalid_argument("remainder_rate: degenerate fit input (f = 0)");
    lx.push_back(std::log(c));
    ly.push_back(std::log(norm));
  }
  // plain least squares on (log c, log norm)
  const double npts = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
}

} // namespace prh
