#pragma once

#include "prh/field.hpp"
#include "prh/transform.hpp"

#include <span>

namespace prh {

enum class SymbolKind {
  pc,        ///< sqrt(c^2 rho^2 + m^2 c^4) - m c^2
  pinf,      ///< rho^2 / 2m
  pinf_n,    ///< (-1)^n alpha_{n+1} / m^{2n+1} rho^{2n+2}
  pc_n,      ///< pc minus the first n terms of its Taylor expansion
  tc,        ///< pc / sqrt(rho^2/(m^2 c^2) + 1)
  frac_lap,  ///< (-Delta)^p, symbol rho^{2p}
  resolvent, ///< 1 / (base symbol + shift)
};

/// A named radial Fourier symbol with its parameters.
struct MultiplierSpec {
  SymbolKind kind = SymbolKind::pinf;
  PhysicalParams params;
  int order = 0;                       ///< n for pinf_n / pc_n
  double power = 0.0;                  ///< p for frac_lap
  SymbolKind base = SymbolKind::pinf;  ///< resolvent base (pc or pinf)
  double shift = 0.0;                  ///< resolvent shift mu > 0

  static MultiplierSpec pc(const PhysicalParams& p);
  static MultiplierSpec pinf(const PhysicalParams& p);
  static MultiplierSpec pinf_n(const PhysicalParams& p, int n);
  static MultiplierSpec pc_n(const PhysicalParams& p, int n);
  static MultiplierSpec tc(const PhysicalParams& p);
  static MultiplierSpec frac_lap(double p);
  static MultiplierSpec resolvent(SymbolKind base_kind, const PhysicalParams& p,
                                  double mu);
  /// Selects the resolvent of the kinetic operator the params imply
  /// (pc for finite c, pinf otherwise).
  static MultiplierSpec kinetic(const PhysicalParams& p);
  static MultiplierSpec kinetic_resolvent(const PhysicalParams& p, double mu);

  void validate() const;
};

/// Taylor coefficient alpha_k = (2k-2)! / (k! (k-1)! 2^{2k-1}) of
/// sqrt(1+t) - 1, via the multiplicative recurrence
/// alpha_{k+1} = alpha_k (2k-1)/(2k+2).  Throws for k < 1.
double alpha(int k);

double eval_symbol(const MultiplierSpec& spec, double rho);

RadialField apply_multiplier(const MultiplierSpec& spec, const RadialField& u);
SpectralField apply_multiplier(const MultiplierSpec& spec,
                               const SpectralField& u);

/// <S(D) u, v> evaluated spectrally.
double multiplier_pairing(const MultiplierSpec& spec, const RadialField& u,
                          const RadialField& v);
double multiplier_pairing(const MultiplierSpec& spec, const SpectralField& u,
                          const SpectralField& v);

/// Least-squares slope of log ||P_{c,n}(D) f||_{L^2} against log c; close to
/// -2n for smooth rapidly decaying f.  Needs at least two c values, f != 0.
double remainder_rate(int n, const RadialField& f,
                      std::span<const double> c_values, double m = 1.0);

} // namespace prh
