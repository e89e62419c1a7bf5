#include "gausscc/gauss.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gausscc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Regularized lower incomplete gamma P(a,x), series branch (x < a+1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Complement Q(a,x) by Lentz continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

// Wichura's AS 241 (PPND16) rational approximation of the normal quantile.
double norm_quantile_estimate(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
              3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
            4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
            2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
            5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

}  // namespace

Prob::Prob(double v) : v_(v), c_(1.0 - v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error("Prob: value outside [0,1]: " + std::to_string(v));
}

Prob Prob::with_complement(double v, double c) {
  if (!(v >= 0.0 && v <= 1.0 && c >= 0.0 && c <= 1.0))
    throw std::domain_error("Prob: value outside [0,1]");
  if (std::fabs((v + c) - 1.0) > 1e-12)
    throw std::domain_error("Prob: inconsistent complement");
  Prob p;
  p.v_ = v;
  p.c_ = c;
  return p;
}

Prob Prob::clamped(double v) {
  Prob p;
  p.v_ = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  p.c_ = 1.0 - p.v_;
  return p;
}

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

Prob Phi(double x) {
  if (std::isinf(x))
    return x > 0 ? Prob::with_complement(1.0, 0.0) : Prob::with_complement(0.0, 1.0);
  const double lower = 0.5 * std::erfc(-x / kSqrt2);
  const double upper = 0.5 * std::erfc(x / kSqrt2);
  Prob p = Prob::clamped(lower);
  return Prob::with_complement(p.value(), Prob::clamped(upper).value());
}

namespace {

// Quantile of a lower-tail probability q <= 1/2 (result <= 0): AS 241
// start, then Newton in probability space. The density stays well scaled on
// this branch, since q is the small tail.
double lower_tail_quantile(double q) {
  double t = norm_quantile_estimate(q);
  for (int it = 0; it < 3; ++it) {
    const double dens = phi(t);
    if (dens < 1e-300) break;
    const double resid = Phi(t).value() - q;
    if (std::fabs(resid) <= 1e-16 * q + 1e-300) break;
    t -= resid / dens;
  }
  return t;
}

}  // namespace

double Phi_inv(const Prob& p) {
  if (!(p.value() > 0.0 && p.value() < 1.0))
    throw std::domain_error("Phi_inv: p must lie in (0,1)");
  if (p.value() <= 0.5) return lower_tail_quantile(p.value());
  return -lower_tail_quantile(p.complement());
}

double Phi_inv(double p) { return Phi_inv(Prob(p)); }

double Phi_inv_deriv(double p) {
  const double q = Phi_inv(p);
  return std::sqrt(2.0 * M_PI) * std::exp(0.5 * q * q);
}

Prob chi_cdf(int dof, double x) {
  if (dof < 1) throw std::domain_error("chi_cdf: dof must be >= 1");
  if (x < 0.0) throw std::domain_error("chi_cdf: x must be >= 0");
  if (dof == 2) {
    const double tail = std::exp(-0.5 * x * x);
    return Prob::with_complement(Prob::clamped(-std::expm1(-0.5 * x * x)).value(),
                                 Prob::clamped(tail).value());
  }
  return Prob::clamped(gamma_p(0.5 * dof, 0.5 * x * x));
}

double chi_inv(int dof, double p) {
  if (dof < 1) throw std::domain_error("chi_inv: dof must be >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("chi_inv: p must lie in (0,1)");
  double lo = 0.0, hi = std::sqrt(static_cast<double>(dof)) + 1.0;
  while (chi_cdf(dof, hi).value() < p) {
    hi *= 2.0;
    if (hi > 1e6) break;
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (chi_cdf(dof, mid).value() < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct SimpsonState {
  const std::function<double(double)>* f;
  int max_depth;
  bool converged = true;
};

double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm), frm = (*st.f)(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  if (depth >= st.max_depth) {
    st.converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_rec(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              double lo, double hi,
                              const QuadratureSpec& spec) {
  if (spec.abs_tol <= 0.0)
    throw std::domain_error("integrate_1d: abs_tol must be positive");
  if (std::isinf(lo)) lo = -9.0;
  if (std::isinf(hi)) hi = 9.0;
  if (lo > hi) throw std::domain_error("integrate_1d: lo > hi");
  if (lo == hi) return {0.0, true};
  SimpsonState st{&f, spec.max_depth};
  const double m = 0.5 * (lo + hi);
  const double fa = f(lo), fm = f(m), fb = f(hi);
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  const double v = simpson_rec(st, lo, hi, fa, fm, fb, whole, spec.abs_tol, 0);
  return {v, st.converged};
}

MinimizeResult minimize_1d(const std::function<double(double)>& h, double lo,
                           double hi, double tol,
                           const std::function<double(double)>& dh) {
  if (!(lo < hi)) throw std::domain_error("minimize_1d: empty interval");
  if (dh) {
    // Strict convexity makes dh monotone increasing; bisect its sign change.
    double a = lo, b = hi;
    if (dh(a) >= 0.0) return {a, h(a), true};
    if (dh(b) <= 0.0) return {b, h(b), true};
    int it = 0;
    while (b - a > tol && it++ < 400) {
      const double m = 0.5 * (a + b);
      (dh(m) < 0.0 ? a : b) = m;
    }
    const double xm = 0.5 * (a + b);
    return {xm, h(xm), b - a <= tol};
  }
  const double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double h1 = h(x1), h2 = h(x2);
  bool converged = false;
  for (int it = 0; it < 400; ++it) {
    if (b - a <= tol) {
      converged = true;
      break;
    }
    if (h1 <= h2) {
      b = x2;
      x2 = x1;
      h2 = h1;
      x1 = b - invphi * (b - a);
      h1 = h(x1);
    } else {
      a = x1;
      x1 = x2;
      h1 = h2;
      x2 = a + invphi * (b - a);
      h2 = h(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, h(xm), converged};
}

}  // namespace gausscc
