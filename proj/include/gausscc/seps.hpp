#pragma once

#include <array>
#include <optional>

#include "gausscc/gauss.hpp"

// Exact oracles for the planar set S_eps = {(x,y): Phi(y) - Phi(x) >= 1-eps}
// of Gaussian interval endpoints, and for its conic hull: membership,
// boundary parameterization, support function, orthogonal projection,
// separating hyperplanes, and smooth constraint representations.

namespace gausscc {

/// Violation probability budget. The primary constructor enforces
/// eps in (0, 1/2], which the conic-hull monotonicity argument needs;
/// wide() admits eps in (0,1) for the planar-level operations only.
class RiskLevel {
 public:
  explicit RiskLevel(double eps);
  static RiskLevel wide(double eps);
  double eps() const { return eps_; }
  bool at_most_half() const { return eps_ <= 0.5; }

 private:
  RiskLevel() = default;
  double eps_ = 0.0;
};

/// Interval endpoints: x the lower limit, y the upper.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Scaled endpoints (x, y, z); z >= 0 is the scale coordinate.
struct ConePoint3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Halfplane a1*x + a2*y <= rhs.
struct Halfplane2 {
  double a1 = 0.0;
  double a2 = 0.0;
  double rhs = 0.0;
};

/// Homogeneous halfspace a1*x + a2*y + a3*z <= 0 valid for the conic hull.
struct ConeCut {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

namespace seps {

/// Phi(y) - Phi(x), clamped to [0,1].
Prob mass(Point2 p);

/// Exact membership, no tolerance: mass(p) >= 1 - eps. Callers needing
/// slack apply it themselves.
bool contains(Point2 p, RiskLevel eps);

/// Membership in the conic hull. z < 0 is definite non-membership.
bool cone_contains(ConePoint3 q, RiskLevel eps);

/// True iff q2.x >= q1.x, q2.y <= q1.y and q2.z >= q1.z: membership of the
/// dominating point q2 implies membership of q1 (for q1.z >= 0).
bool monotone_dominates(ConePoint3 q1, ConePoint3 q2);

/// The boundary point (Phi_inv(lambda*eps), Phi_inv(1-(1-lambda)*eps)),
/// lambda in (0,1); its mass is 1-eps to ~1e-13.
Point2 boundary_point(double lambda, RiskLevel eps);

struct SupportResult {
  double value = 0.0;                 // +inf on recession directions
  std::optional<Point2> maximizer;    // empty on recession and axis cases
  std::optional<double> lambda;       // boundary parameter when attained
};

/// Support function sigma(a1,a2) = max {a1*x + a2*y : (x,y) in S_eps}.
/// Finite and attained only for a1 > 0, a2 < 0; the two axis cases are the
/// lambda -> 0 / 1 limits and are finite but not attained.
SupportResult support(double a1, double a2, RiskLevel eps);

struct Projection {
  Point2 point;
  double lambda = 0.0;
};

/// Orthogonal projection of an exterior point onto the boundary of S_eps.
Projection project(Point2 p, RiskLevel eps);

/// First-order (gradient) separating cut at an exterior point. Valid but
/// generally not tangent. Cuts are scaled to max(|a1|,|a2|) = 1.
Halfplane2 separate_gradient(Point2 p, RiskLevel eps);

/// Tangent separating cut through the projection of an exterior point;
/// tight: support(a1,a2) equals rhs. Scaled to max(|a1|,|a2|) = 1.
Halfplane2 separate_tangent(Point2 p, RiskLevel eps);

/// Separating halfspace for the conic hull at an exterior point. Lifts a
/// tangent planar cut when z > 0; returns an axis or z >= 0 cut otherwise.
ConeCut cone_separate(ConePoint3 q, RiskLevel eps);

enum class SmoothForm { plain, log };

struct SmoothValueGrad {
  double value = 0.0;
  std::array<double, 3> grad{};  // d/dx, d/dy, d/dz
};

/// Concave constraint function whose nonnegativity characterizes the conic
/// hull for z > 0, with its analytic gradient.
///   plain: z*(Phi(y/z) - Phi(x/z) - (1-eps))
///   log:   z*(log(Phi(y/z) - Phi(x/z)) - log(1-eps))
SmoothValueGrad smooth_value_grad(ConePoint3 q, RiskLevel eps, SmoothForm form);

}  // namespace seps
}  // namespace gausscc
