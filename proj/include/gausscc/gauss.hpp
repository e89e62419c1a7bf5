#pragma once

#include <functional>

// Scalar special functions and 1-D numerical kernels shared by the whole
// toolkit: standard Gaussian density/CDF/quantile, the chi distribution,
// adaptive quadrature and golden-section minimization.

namespace gausscc {

/// A probability value, kept in [0,1]. Carries its complement alongside so
/// that producers who know both tails accurately (Phi, chi_cdf) do not lose
/// the small tail to rounding near 1.
class Prob {
 public:
  explicit Prob(double v);
  /// Producer-side constructor with an independently computed complement.
  static Prob with_complement(double v, double c);
  /// Clamp small numerical overshoot into [0,1] instead of throwing.
  static Prob clamped(double v);
  double value() const { return v_; }
  double complement() const { return c_; }
  operator double() const { return v_; }

 private:
  Prob() = default;
  double v_ = 0.0;
  double c_ = 1.0;
};

/// Standard Gaussian density.
double phi(double x);

/// Standard Gaussian CDF. Accepts +-infinity. Both tails of the returned
/// Prob are accurate to full relative precision.
Prob Phi(double x);

/// Inverse of Phi on (0,1). Rational initializer plus Newton refinement;
/// the refined quantile satisfies |Phi(q) - p| <= 1e-13. The Prob overload
/// inverts through the smaller tail, so Phi_inv(Phi(x)) recovers x to
/// ~1e-12 across [-8, 8].
double Phi_inv(const Prob& p);
double Phi_inv(double p);

/// d/dp Phi_inv(p) = sqrt(2*pi) * exp(Phi_inv(p)^2 / 2).
double Phi_inv_deriv(double p);

/// CDF of the chi distribution (the law of ||xi||_2 for xi ~ N(0, I_dof)).
/// dof = 2 uses the closed form 1 - exp(-x^2/2).
Prob chi_cdf(int dof, double x);

/// Inverse chi CDF, by bisection to absolute tolerance 1e-12.
double chi_inv(int dof, double p);

struct QuadratureSpec {
  double abs_tol = 1e-9;
  int max_depth = 60;
};

struct QuadratureResult {
  double value = 0.0;
  bool converged = true;
};

/// Adaptive Simpson quadrature of f over [lo, hi] targeting abs_tol.
/// Infinite endpoints are truncated at +-9; only meaningful for integrands
/// with Gaussian-like decay (tail mass below 1e-18 there).
QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              double lo, double hi,
                              const QuadratureSpec& spec = {});

struct MinimizeResult {
  double argmin = 0.0;
  double min = 0.0;
  bool converged = true;
};

/// Minimize a strictly convex h on (lo, hi). Without a derivative this is
/// golden-section search: the argmin is then only reliable to about
/// sqrt(machine eps) * scale, the value to full precision. With dh supplied
/// the monotone derivative is bisected, giving |argmin - true| <= tol.
MinimizeResult minimize_1d(const std::function<double(double)>& h,
                           double lo, double hi, double tol = 1e-10,
                           const std::function<double(double)>& dh = {});

}  // namespace gausscc
