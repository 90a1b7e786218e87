#include "prh/field.hpp"

#include <algorithm>
#include <numbers>

namespace prh {

void PhysicalParams::validate(bool action_problem) const {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("PhysicalParams: mass must be finite and > 0");
  if (!(c > 0.0))
    throw std::invalid_argument("PhysicalParams: c must be > 0 or infinite");
  if (action_problem && (!(lambda > 0.0) || !std::isfinite(lambda)))
    throw std::invalid_argument(
        "PhysicalParams: lambda must be finite and > 0 for the action problem");
}

RadialGrid::RadialGrid(int n, double radius) : n_(n), radius_(radius) {
  if (n < 1)
    throw std::invalid_argument("RadialGrid: need at least one interior node");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("RadialGrid: radius must be finite and > 0");
  dr_ = radius_ / (n_ + 1);
  drho_ = std::numbers::pi / radius_;
}

namespace detail {

void require_same_grid(const RadialGrid& a, const RadialGrid& b) {
  if (!(a == b))
    throw std::invalid_argument("grid mismatch: fields live on different grids");
}

void require_finite(std::span<const double> values) {
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("field contains a non-finite value");
}

} // namespace detail

RadialField::RadialField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->size())
    throw std::invalid_argument("RadialField: value count does not match grid");
  detail::require_finite(values_);
}

RadialField& RadialField::operator+=(const RadialField& o) {
  detail::require_same_grid(*grid_, o.grid());
  for (int i = 0; i < size(); ++i) values_[i] += o.values_[i];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& o) {
  detail::require_same_grid(*grid_, o.grid());
  for (int i = 0; i < size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

RadialField& RadialField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
RadialField operator*(double s, RadialField a) { return a *= s; }

RadialField add_scaled(const RadialField& a, double s, const RadialField& b) {
  detail::require_same_grid(a.grid(), b.grid());
  RadialField out = a;
  for (int i = 0; i < out.size(); ++i) out[i] += s * b[i];
  return out;
}

RadialField pointwise(const RadialField& u, const RadialField& v) {
  detail::require_same_grid(u.grid(), v.grid());
  RadialField out(u.grid_ptr());
  for (int i = 0; i < out.size(); ++i) out[i] = u[i] * v[i];
  return out;
}

SpectralField::SpectralField(GridPtr grid, std::vector<double> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != grid_->size())
    throw std::invalid_argument("SpectralField: coeff count does not match grid");
  detail::require_finite(coeffs_);
}

double inner_product(const RadialField& u, const RadialField& v) {
  detail::require_same_grid(u.grid(), v.grid());
  const RadialGrid& g = u.grid();
  double acc = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double r = g.r(i);
    acc += u[i] * v[i] * r * r;
  }
  return 4.0 * std::numbers::pi * g.dr() * acc;
}

double l2_norm(const RadialField& u) { return std::sqrt(inner_product(u, u)); }

double max_abs(const RadialField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

} // namespace prh
