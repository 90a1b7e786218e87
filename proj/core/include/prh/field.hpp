#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace prh {

/// Sentinel selecting the non-relativistic kinetic operator -Delta/2m.
inline constexpr double infinite_c = std::numeric_limits<double>::infinity();

/// Physical constants of the problem in hbar = 1 units.
struct PhysicalParams {
  double m = 1.0;        ///< particle mass, > 0
  double lambda = 1.0;   ///< frequency of the action problem, > 0
  double c = infinite_c; ///< speed of light, > 0 finite or infinite_c

  bool nonrelativistic() const { return std::isinf(c); }

  /// Throws std::invalid_argument on m <= 0, c <= 0, non-finite m, or
  /// (when the action problem is posed) lambda <= 0.
  void validate(bool action_problem = false) const;
};

/// Uniform radial mesh on [0, R] with implicit Dirichlet endpoints.
///
/// Interior nodes r_i = (i+1) dr for i = 0..n-1 with dr = R/(n+1); the matched
/// sine frequencies are rho_j = (j+1) pi/R.  Physical and spectral node counts
/// are equal, so the sine transform is a bijection on interior values.
class RadialGrid {
public:
  RadialGrid(int n, double radius);

  static std::shared_ptr<const RadialGrid> create(int n, double radius) {
    return std::make_shared<const RadialGrid>(n, radius);
  }

  int size() const { return n_; }
  double radius() const { return radius_; }
  double dr() const { return dr_; }
  double drho() const { return drho_; }
  double r(int i) const { return dr_ * (i + 1); }
  double rho(int j) const { return drho_ * (j + 1); }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.n_ == b.n_ && a.radius_ == b.radius_;
  }

private:
  int n_;
  double radius_;
  double dr_;
  double drho_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

namespace detail {
void require_same_grid(const RadialGrid& a, const RadialGrid& b);
void require_finite(std::span<const double> values);
} // namespace detail

/// Real radial profile u(r_i) representing a radial function on R^3.
/// Immutable grid reference; values indexed i = 0..n-1 for r = (i+1) dr.
class RadialField {
public:
  explicit RadialField(GridPtr grid)
      : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

  RadialField(GridPtr grid, std::vector<double> values);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }

  double operator[](int i) const { return values_[i]; }
  double& operator[](int i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  RadialField& operator+=(const RadialField& o);
  RadialField& operator-=(const RadialField& o);
  RadialField& operator*=(double s);

private:
  GridPtr grid_;
  std::vector<double> values_;
};

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(double s, RadialField a);

/// a + s*b
RadialField add_scaled(const RadialField& a, double s, const RadialField& b);
/// pointwise product u(r) v(r)
RadialField pointwise(const RadialField& u, const RadialField& v);

/// Real sine-spectral coefficients of v(r) = r u(r), indexed by rho_j.
class SpectralField {
public:
  explicit SpectralField(GridPtr grid)
      : grid_(std::move(grid)), coeffs_(grid_->size(), 0.0) {}

  SpectralField(GridPtr grid, std::vector<double> coeffs);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  double operator[](int j) const { return coeffs_[j]; }
  double& operator[](int j) { return coeffs_[j]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

private:
  GridPtr grid_;
  std::vector<double> coeffs_;
};

/// L^2(R^3) pairing of radial functions, 4 pi int_0^R u v r^2 dr by
/// trapezoidal quadrature with the implicit zero endpoints.
double inner_product(const RadialField& u, const RadialField& v);
double l2_norm(const RadialField& u);

/// Largest |u_i|.
double max_abs(const RadialField& u);

} // namespace prh
