#include "prh/hartree.hpp"

#include <cmath>
#include <numbers>

namespace prh {

RadialField coulomb_potential(const RadialField& f) {
  const RadialGrid& g = f.grid();
  const int n = g.size();
  const double dr = g.dr();
  const double fourpi = 4.0 * std::numbers::pi;

  // inner charge integral A_i = int_0^{r_i} s^2 f ds, integrand 0 at s = 0
  std::vector<double> inner(n);
  {
    double acc = 0.0, prev = 0.0;
    for (int i = 0; i < n; ++i) {
      const double cur = g.r(i) * g.r(i) * f[i];
      acc += 0.5 * dr * (prev + cur);
      inner[i] = acc;
      prev = cur;
    }
  }
  // outer integral B_i = int_{r_i}^R s f ds, integrand 0 at s = R
  std::vector<double> outer(n);
  {
    double acc = 0.0, prev = 0.0;
    for (int i = n - 1; i >= 0; --i) {
      const double cur = g.r(i) * f[i];
      acc += 0.5 * dr * (prev + cur);
      outer[i] = acc;
      prev = cur;
    }
  }
  // Euler-Maclaurin: the trapezoid shell sums carry a local O(dr^2) defect
  // that collapses to -(pi/3) dr^2 f(r); adding it back leaves O(dr^4).
  const double self_term = std::numbers::pi / 3.0 * dr * dr;
  RadialField out(f.grid_ptr());
  for (int i = 0; i < n; ++i)
    out[i] = fourpi * (inner[i] / g.r(i) + outer[i]) - self_term * f[i];
  return out;
}

RadialField coulomb_potential_spectral(const RadialField& f) {
  const RadialGrid& g = f.grid();
  const double fourpi = 4.0 * std::numbers::pi;
  SpectralField ft = sine_transform(f);
  double charge = 0.0; // Q = 4 pi int s^2 f ds
  for (int i = 0; i < f.size(); ++i) charge += g.r(i) * g.r(i) * f[i];
  charge *= fourpi * g.dr();
  for (int j = 0; j < ft.size(); ++j) {
    const double rho = g.rho(j);
    ft[j] *= fourpi / (rho * rho);
  }
  RadialField out = inverse_sine_transform(ft);
  const double shift = charge / g.radius();
  for (int i = 0; i < out.size(); ++i) out[i] += shift;
  return out;
}

RadialField hartree_nonlinearity(const RadialField& u) {
  return pointwise(coulomb_potential(pointwise(u, u)), u);
}

RadialField d1_nonlinearity(const RadialField& u, const RadialField& h) {
  RadialField out = pointwise(coulomb_potential(pointwise(u, u)), h);
  out += 2.0 * pointwise(coulomb_potential(pointwise(u, h)), u);
  return out;
}

RadialField d2_nonlinearity(const RadialField& u, const RadialField& h1,
                            const RadialField& h2) {
  RadialField out = pointwise(coulomb_potential(pointwise(h1, h2)), u);
  out += pointwise(coulomb_potential(pointwise(u, h1)), h2);
  out += pointwise(coulomb_potential(pointwise(u, h2)), h1);
  out *= 2.0;
  return out;
}

RadialField d3_nonlinearity(const RadialField& h1, const RadialField& h2,
                            const RadialField& h3) {
  RadialField out = pointwise(coulomb_potential(pointwise(h1, h2)), h3);
  out += pointwise(coulomb_potential(pointwise(h2, h3)), h1);
  out += pointwise(coulomb_potential(pointwise(h3, h1)), h2);
  out *= 2.0;
  return out;
}

double hartree_energy(const RadialField& u) {
  const RadialField density = pointwise(u, u);
  return inner_product(coulomb_potential(density), density);
}

double action_value(const RadialField& u, const PhysicalParams& params) {
  params.validate(true);
  const MultiplierSpec kin = MultiplierSpec::kinetic(params);
  const SpectralField ut = sine_transform(u);
  return multiplier_pairing(kin, ut, ut) +
         params.lambda * inner_product(u, u) - 0.5 * hartree_energy(u);
}

double energy_value(const RadialField& u, const PhysicalParams& params) {
  params.validate();
  const MultiplierSpec kin = MultiplierSpec::kinetic(params);
  const SpectralField ut = sine_transform(u);
  return multiplier_pairing(kin, ut, ut) - 0.5 * hartree_energy(u);
}

double nehari_residual(const RadialField& u, const PhysicalParams& params) {
  params.validate(true);
  const MultiplierSpec kin = MultiplierSpec::kinetic(params);
  const SpectralField ut = sine_transform(u);
  return multiplier_pairing(kin, ut, ut) +
         params.lambda * inner_product(u, u) - hartree_energy(u);
}

RadialField hartree_composition_sum(std::span<const RadialField> fields,
                                    int k) {
  if (k < 1) throw std::invalid_argument("hartree_composition_sum: k must be >= 1");
  if (static_cast<int>(fields.size()) < k)
    throw std::invalid_argument(
        "hartree_composition_sum: need fields f_0..f_{k-1}");
  RadialField out(fields[0].grid_ptr());
  if (k == 1) return out; // T_1 = 0
  // ordered compositions; the 1/j! weights compensate the ordered counting
  // of the symmetric forms
  for (int i1 = 1; i1 <= k - 1; ++i1) {
    const int i2 = k - i1;
    if (i2 >= 1 && i2 <= k - 1)
      out += 0.5 * d2_nonlinearity(fields[0], fields[i1], fields[i2]);
  }
  if (k >= 3) {
    for (int i1 = 1; i1 <= k - 1; ++i1)
      for (int i2 = 1; i2 <= k - 1 - i1; ++i2) {
        const int i3 = k - i1 - i2;
        if (i3 >= 1 && i3 <= k - 1)
          out += (1.0 / 6.0) *
                 d3_nonlinearity(fields[i1], fields[i2], fields[i3]);
      }
  }
  return out;
}

double energy_derivative(const RadialField& w, std::span<const RadialField> h,
                         int k, double m) {
  if (k < 1 || k > 4)
    throw std::invalid_argument("energy_derivative: k must be in 1..4");
  if (static_cast<int>(h.size()) != k)
    throw std::invalid_argument("energy_derivative: need exactly k directions");
  PhysicalParams p;
  p.m = m;
  const MultiplierSpec pinf = MultiplierSpec::pinf(p);
  switch (k) {
    case 1:
      return 2.0 * multiplier_pairing(pinf, w, h[0]) -
             2.0 * inner_product(hartree_nonlinearity(w), h[0]);
    case 2:
      return 2.0 * multiplier_pairing(pinf, h[0], h[1]) -
             2.0 * inner_product(d1_nonlinearity(w, h[0]), h[1]);
    case 3:
      return -2.0 * inner_product(d2_nonlinearity(w, h[0], h[1]), h[2]);
    default:
      return -2.0 * inner_product(d3_nonlinearity(h[0], h[1], h[2]), h[3]);
  }
}

} // namespace prh
