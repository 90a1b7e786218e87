// Correction series of the non-relativistic limit.
//
// Both series solve, order by order, a linear problem driven by the Taylor
// terms of the relativistic symbol and by products of lower-order
// corrections through the derivatives of the Hartree nonlinearity:
//
//   action:  L_lambda f_k = -sum_{j<k} P_{inf,k-j} f_j + T_k
//   energy:  L_omega  g_k = -sum_{j<k} P_{inf,k-j} g_j - sum_{j<k} b_{k-j} g_j
//                           + T_k
//
// with T_k the ordered-composition sum over N'' and N''' terms.  For the
// energy series the scalar coefficients close the loop: a_k assembles the
// c^{-2k} content of the energy level (kinetic Taylor pairings a1 plus the
// functional expansion a2), b_k follows from the Pohozaev-operator expansion
// as b_k = -3 a_k + a1_k - b1_k, and both involve only g_0..g_{k-1}, so they
// are computed before the solve at each order.

#include "prh/expansion.hpp"

#include "prh/multipliers.hpp"

#include <cmath>

namespace prh {

namespace {

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= double(n - k + i) / double(i);
  return v;
}

// <(-Delta)^{(t+1)/2} a, (-Delta)^{(t+1)/2} b>, spectral weight rho^{2(t+1)}
double laplacian_pairing(const SpectralField& a, const SpectralField& b,
                         int t) {
  return spectral_pairing(
      a, b, [t](double rho) { return std::pow(rho, 2 * (t + 1)); });
}

std::vector<SpectralField> transforms(std::span<const RadialField> g) {
  std::vector<SpectralField> gt;
  gt.reserve(g.size());
  for (const RadialField& f : g) gt.push_back(sine_transform(f));
  return gt;
}

RadialField expansion_rhs(const ExpansionSeries& s,
                          std::span<const RadialField> fields, int k) {
  PhysicalParams p = s.base.params;
  RadialField rhs(fields[0].grid_ptr());
  for (int j = 0; j <= k - 1; ++j)
    rhs -= apply_multiplier(MultiplierSpec::pinf_n(p, k - j), fields[j]);
  if (s.kind == ProblemKind::energy)
    for (int j = 0; j <= k - 1; ++j) rhs -= s.b[k - j - 1] * fields[j];
  rhs += hartree_composition_sum(fields, k);
  return rhs;
}

} // namespace

double series_coeff_a1(std::span<const RadialField> g, int j, double m) {
  if (static_cast<int>(g.size()) < j)
    throw std::invalid_argument("series_coeff_a1: need g_0..g_{j-1}");
  const auto gt = transforms(g);
  double sum = 0.0;
  for (int t = 1; t <= j; ++t) {
    const int s = j - t;
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;
    const double weight = sign * alpha(t + 1) / std::pow(m, 2 * t + 1);
    for (int k = 0; k <= s; ++k)
      sum += weight * laplacian_pairing(gt[k], gt[s - k], t);
  }
  return sum;
}

double series_coeff_a2(double omega_inf, std::span<const RadialField> g, int j,
                       double m) {
  if (static_cast<int>(g.size()) < j)
    throw std::invalid_argument("series_coeff_a2: need g_0..g_{j-1}");
  const RadialField& w = g[0];
  double sum = 0.0;
  for (int i = 1; i <= j - 1; ++i) {
    const int k = j - i;
    const RadialField hs2[] = {g[i], g[k]};
    sum += omega_inf * inner_product(g[i], g[k]) +
           0.5 * energy_derivative(w, hs2, 2, m);
  }
  for (int i = 1; i <= j - 2; ++i)
    for (int k = 1; k <= j - 1 - i; ++k) {
      const int l = j - i - k;
      const RadialField hs3[] = {g[i], g[k], g[l]};
      sum += (1.0 / 6.0) * energy_derivative(w, hs3, 3, m);
    }
  for (int i = 1; i <= j - 3; ++i)
    for (int k = 1; k <= j - 2 - i; ++k)
      for (int l = 1; l <= j - 1 - i - k; ++l) {
        const int t = j - i - k - l;
        const RadialField hs4[] = {g[i], g[k], g[l], g[t]};
        sum += (1.0 / 24.0) * energy_derivative(w, hs4, 4, m);
      }
  return sum;
}

double series_coeff_b1(std::span<const RadialField> g, int j, double m) {
  if (static_cast<int>(g.size()) < j)
    throw std::invalid_argument("series_coeff_b1: need g_0..g_{j-1}");
  const auto gt = transforms(g);
  double sum = 0.0;
  for (int z = 1; z <= j; ++z) {
    const int l = j - z;
    const double sign = (z % 2 == 0) ? 1.0 : -1.0;
    const double outer = sign / std::pow(m, 2 * z + 1);
    double inner = 0.0;
    for (int s = 0; s <= z; ++s) {
      const int t = z - s;
      inner += alpha(s + 1) / std::pow(4.0, t) * binomial(2 * t, t);
    }
    double pair_sum = 0.0;
    for (int p = 0; p <= l; ++p)
      pair_sum += laplacian_pairing(gt[l - p], gt[p], z);
    sum += outer * inner * pair_sum;
  }
  return sum;
}

double series_coeff_a(double omega_inf, std::span<const RadialField> g, int j,
                      double m) {
  return series_coeff_a1(g, j, m) + series_coeff_a2(omega_inf, g, j, m);
}

double series_coeff_b(double omega_inf, std::span<const RadialField> g, int j,
                      double m) {
  const double a1 = series_coeff_a1(g, j, m);
  const double a = a1 + series_coeff_a2(omega_inf, g, j, m);
  return -3.0 * a + a1 - series_coeff_b1(g, j, m);
}

ExpansionSeries build_action_expansion(const GroundStateResult& base, int order,
                                       double tol) {
  if (base.kind != ProblemKind::action)
    throw std::invalid_argument("build_action_expansion: base must be an action state");
  if (!base.params.nonrelativistic())
    throw std::invalid_argument("build_action_expansion: base must solve the limit problem");
  if (order < 0) throw std::invalid_argument("expansion order must be >= 0");

  ExpansionSeries s{ProblemKind::action, base, {}, {}, {}, order};

  const LinearizedOp op(base.profile, base.params.lambda, base.params);
  std::vector<RadialField> fields{base.profile};
  for (int k = 1; k <= order; ++k) {
    const RadialField rhs = expansion_rhs(s, fields, k);
    fields.push_back(solve(op, rhs, tol));
    s.corrections.push_back(fields.back());
  }
  return s;
}

ExpansionSeries build_energy_expansion(const GroundStateResult& base, int order,
                                       double tol) {
  if (base.kind != ProblemKind::energy)
    throw std::invalid_argument("build_energy_expansion: base must be an energy state");
  if (!base.params.nonrelativistic())
    throw std::invalid_argument("build_energy_expansion: base must solve the limit problem");
  if (order < 0) throw std::invalid_argument("expansion order must be >= 0");

  ExpansionSeries s{ProblemKind::energy, base, {}, {}, {}, order};

  const double omega = base.multiplier;
  const double m = base.params.m;
  const LinearizedOp op(base.profile, omega, base.params);
  std::vector<RadialField> fields{base.profile};
  // a_k, b_k involve only g_0..g_{k-1}, so coefficients come first at each k.
  for (int k = 1; k <= order; ++k) {
    const double a1 = series_coeff_a1(fields, k, m);
    const double a2 = series_coeff_a2(omega, fields, k, m);
    const double b1 = series_coeff_b1(fields, k, m);
    s.a.push_back(a1 + a2);
    s.b.push_back(-3.0 * (a1 + a2) + a1 - b1);
    const RadialField rhs = expansion_rhs(s, fields, k);
    fields.push_back(solve(op, rhs, tol));
    s.corrections.push_back(fields.back());
  }
  return s;
}

RadialField eval_series(const ExpansionSeries& s, double c, int up_to) {
  if (up_to < 0 || up_to > s.order)
    throw std::invalid_argument("eval_series: up_to must be in 0..order");
  if (!(c > 0.0) || std::isnan(c))
    throw std::invalid_argument("eval_series: c must be > 0");
  RadialField out = s.base.profile;
  double inv = 1.0;
  for (int j = 1; j <= up_to; ++j) {
    inv /= c * c;
    out += inv * s.corrections[j - 1];
  }
  return out;
}

double eval_scalar_series(double base_value, std::span<const double> coeffs,
                          double c, int up_to) {
  if (up_to < 0 || up_to > static_cast<int>(coeffs.size()))
    throw std::invalid_argument("eval_scalar_series: up_to out of range");
  if (!(c > 0.0) || std::isnan(c))
    throw std::invalid_argument("eval_scalar_series: c must be > 0");
  double out = base_value;
  double inv = 1.0;
  for (int j = 1; j <= up_to; ++j) {
    inv /= c * c;
    out += inv * coeffs[j - 1];
  }
  return out;
}

double correction_residual(const ExpansionSeries& s, int j) {
  if (j < 1 || j > s.order)
    throw std::invalid_argument("correction_residual: j must be in 1..order");
  const double freq = s.kind == ProblemKind::action ? s.base.params.lambda
                                                    : s.base.multiplier;
  const LinearizedOp op(s.base.profile, freq, s.base.params);
  std::vector<RadialField> fields{s.base.profile};
  for (int k = 0; k < j - 1; ++k) fields.push_back(s.corrections[k]);
  const RadialField rhs = expansion_rhs(s, fields, j);
  const RadialField lhs = apply(op, s.corrections[j - 1]);
  return l2_norm(lhs - rhs) / l2_norm(rhs);
}

} // namespace prh
