#include "gausscc/seps.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gausscc {

RiskLevel::RiskLevel(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps <= 0.5))
    throw std::domain_error("RiskLevel: eps must lie in (0, 1/2]: " +
                            std::to_string(eps));
}

RiskLevel RiskLevel::wide(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("RiskLevel: eps must lie in (0, 1)");
  RiskLevel r;
  r.eps_ = eps;
  return r;
}

namespace seps {

namespace {

// lambda is clamped to [kLambdaEdge, 1-kLambdaEdge] inside 1-D searches;
// Phi_inv diverges at the endpoints and the limits are handled analytically.
constexpr double kLambdaEdge = 1e-12;

void require_cone_eps(RiskLevel eps, const char* who) {
  if (!eps.at_most_half())
    throw std::domain_error(std::string(who) +
                            ": conic-hull operations need eps <= 1/2");
}

double boundary_x(double lambda, double eps) { return Phi_inv(lambda * eps); }

double boundary_y(double lambda, double eps) {
  const double tail = (1.0 - lambda) * eps;
  return Phi_inv(Prob::with_complement(1.0 - tail, tail));
}

// d/dlambda of the boundary coordinates: eps * sqrt(2*pi) * exp(coord^2/2).
double boundary_dx(double coord, double eps) {
  return eps * std::sqrt(2.0 * M_PI) * std::exp(0.5 * coord * coord);
}

Halfplane2 normalized(double a1, double a2, double rhs) {
  const double m = std::max(std::fabs(a1), std::fabs(a2));
  return {a1 / m, a2 / m, rhs / m};
}

}  // namespace

Prob mass(Point2 p) {
  return Prob::clamped(Phi(p.y).value() - Phi(p.x).value());
}

bool contains(Point2 p, RiskLevel eps) {
  return mass(p).value() >= 1.0 - eps.eps();
}

bool cone_contains(ConePoint3 q, RiskLevel eps) {
  require_cone_eps(eps, "cone_contains");
  if (q.z < 0.0) return false;
  if (q.z == 0.0) return q.x <= 0.0 && q.y >= 0.0;
  return contains({q.x / q.z, q.y / q.z}, eps);
}

bool monotone_dominates(ConePoint3 q1, ConePoint3 q2) {
  return q2.x >= q1.x && q2.y <= q1.y && q2.z >= q1.z;
}

Point2 boundary_point(double lambda, RiskLevel eps) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("boundary_point: lambda must lie in (0,1)");
  return {boundary_x(lambda, eps.eps()), boundary_y(lambda, eps.eps())};
}

SupportResult support(double a1, double a2, RiskLevel eps) {
  if (a1 == 0.0 && a2 == 0.0)
    throw std::invalid_argument("support: zero direction");
  const double e = eps.eps();
  const double inf = std::numeric_limits<double>::infinity();
  if (a1 < 0.0 || a2 > 0.0) return {inf, std::nullopt, std::nullopt};
  if (a1 == 0.0) {
    // lambda -> 0 limit: value approaches a2 * Phi_inv(1-eps), not attained.
    return {a2 * Phi_inv(Prob::with_complement(1.0 - e, e)), std::nullopt,
            std::nullopt};
  }
  if (a2 == 0.0) {
    // lambda -> 1 limit.
    return {a1 * Phi_inv(e), std::nullopt, std::nullopt};
  }
  auto h = [&](double lam) {
    return -(a1 * boundary_x(lam, e) + a2 * boundary_y(lam, e));
  };
  auto dh = [&](double lam) {
    const double x = boundary_x(lam, e);
    const double y = boundary_y(lam, e);
    return -(a1 * boundary_dx(x, e) + a2 * boundary_dx(y, e));
  };
  const auto r =
      minimize_1d(h, kLambdaEdge, 1.0 - kLambdaEdge, 1e-13, dh);
  const Point2 maximizer = {boundary_x(r.argmin, e), boundary_y(r.argmin, e)};
  return {-r.min, maximizer, r.argmin};
}

Projection project(Point2 p, RiskLevel eps) {
  if (contains(p, eps))
    throw std::domain_error("project: point is already a member");
  const double e = eps.eps();
  // The minimizer lies between the axis projections; restrict lambda there.
  double lo = 1.0 - Phi(p.y).complement() / e;
  double hi = Phi(p.x).value() / e;
  lo = std::max(lo, kLambdaEdge);
  hi = std::min(hi, 1.0 - kLambdaEdge);
  if (!(lo < hi)) {
    const double lam = 0.5 * (lo + hi);
    return {{boundary_x(lam, e), boundary_y(lam, e)}, lam};
  }
  auto h = [&](double lam) {
    const double dx = boundary_x(lam, e) - p.x;
    const double dy = boundary_y(lam, e) - p.y;
    return 0.5 * (dx * dx + dy * dy);
  };
  auto dh = [&](double lam) {
    const double x = boundary_x(lam, e);
    const double y = boundary_y(lam, e);
    return (x - p.x) * boundary_dx(x, e) + (y - p.y) * boundary_dx(y, e);
  };
  const auto r = minimize_1d(h, lo, hi, 1e-13, dh);
  return {{boundary_x(r.argmin, e), boundary_y(r.argmin, e)}, r.argmin};
}

Halfplane2 separate_gradient(Point2 p, RiskLevel eps) {
  if (contains(p, eps))
    throw std::domain_error("separate_gradient: point is a member");
  const double f = (1.0 - eps.eps()) - mass(p).value();
  const double a1 = phi(p.x);
  const double a2 = -phi(p.y);
  return normalized(a1, a2, a1 * p.x + a2 * p.y - f);
}

Halfplane2 separate_tangent(Point2 p, RiskLevel eps) {
  if (contains(p, eps))
    throw std::domain_error("separate_tangent: point is a member");
  const auto proj = project(p, eps);
  const double a1 = p.x - proj.point.x;
  const double a2 = p.y - proj.point.y;
  return normalized(a1, a2, a1 * proj.point.x + a2 * proj.point.y);
}

ConeCut cone_separate(ConePoint3 q, RiskLevel eps) {
  require_cone_eps(eps, "cone_separate");
  if (cone_contains(q, eps))
    throw std::domain_error("cone_separate: point is in the cone");
  if (q.z < 0.0) return {0.0, 0.0, -1.0};
  if (q.z == 0.0) {
    if (q.x > 0.0) return {1.0, 0.0, 0.0};
    return {0.0, -1.0, 0.0};
  }
  const Halfplane2 hp = separate_tangent({q.x / q.z, q.y / q.z}, eps);
  return {hp.a1, hp.a2, -hp.rhs};
}

SmoothValueGrad smooth_value_grad(ConePoint3 q, RiskLevel eps,
                                  SmoothForm form) {
  if (!(q.z > 0.0))
    throw std::domain_error("smooth_value_grad: requires z > 0");
  const double u = q.x / q.z;
  const double v = q.y / q.z;
  const double m = Phi(v).value() - Phi(u).value();
  const double pu = phi(u), pv = phi(v);
  if (form == SmoothForm::plain) {
    const double c = 1.0 - eps.eps();
    SmoothValueGrad out;
    out.value = q.z * (m - c);
    out.grad = {-pu, pv, (m - c) + u * pu - v * pv};
    return out;
  }
  if (!(m > 0.0))
    throw std::domain_error("smooth_value_grad: log form needs Phi(y/z) > Phi(x/z)");
  const double c = std::log1p(-eps.eps());
  SmoothValueGrad out;
  out.value = q.z * (std::log(m) - c);
  out.grad = {-pu / m, pv / m, (std::log(m) - c) + (u * pu - v * pv) / m};
  return out;
}

}  // namespace seps
}  // namespace gausscc
