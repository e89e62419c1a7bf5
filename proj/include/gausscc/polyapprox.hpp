#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "gausscc/seps.hpp"

// Polyhedral outer approximations of S_eps: the 2-cut axis family A_eps,
// the 3-cut family B_eps, uniform tangent families, numeric certification
// of their approximation factor, and the conservative (shrunken-eps)
// counterparts.

namespace gausscc::polyapprox {

struct Polyhedron2 {
  std::vector<Halfplane2> cuts;
  std::vector<Point2> vertices;                  // sorted by x
  std::vector<std::pair<double, double>> rays;   // recession directions
};

struct AlphaCertificate {
  double alpha = 0.0;
  Point2 worst_vertex;
  double worst_mass_deficit = 0.0;  // 1 - mass(worst_vertex)
};

/// Axis-aligned two-cut family: x <= Phi_inv(eps), y >= Phi_inv(1-eps).
Polyhedron2 build_A(RiskLevel eps);

/// Three-cut family: A_eps plus the diagonal cut x - y <= 2 Phi_inv(eps/2).
Polyhedron2 build_B(RiskLevel eps);

/// Tangent cuts at boundary_point(i/(n-1)) for i = 0..n-1; the two limit
/// values give the axis cuts, so n_cuts = 2 reproduces A_eps and
/// n_cuts = 3 reproduces B_eps.
Polyhedron2 build_tangent(RiskLevel eps, int n_cuts);

/// Certify the approximation factor from the vertices: alpha = max over
/// vertices of (1 - mass(v))/eps. Rejects polyhedra whose rays are not
/// exactly {(-1,0),(0,1)} or whose cuts fail the support validity test.
AlphaCertificate certify_alpha(const Polyhedron2& P, RiskLevel eps);

enum class Family { A, B, tangent };

/// The chosen family evaluated at eps/alpha; every vertex of the result is
/// a member of S_eps (checked, throws if alpha understates the factor).
Polyhedron2 build_conservative(RiskLevel eps, double alpha, Family family,
                               int n_cuts = 0);

struct TailLemmaReport {
  double fprime_half = 0.0;   // derivative of the half-tail gap at eps = 1/2
  double limit_value = 0.0;   // Phi_inv(1-e/2)^2 - Phi_inv(1-e)^2 at e = 1e-6
  double limit_target = 0.0;  // 2 log 2
  bool limit_claim_met = false;  // |limit_value - limit_target| <= 1e-3
  std::vector<double> tail2_violations;
  std::vector<double> fourbound_violations;
};

/// Numeric check of the two tail inequalities on a grid in (0, 1/2], plus
/// the two scalar quantities they hinge on.
TailLemmaReport verify_tail_lemmas(const std::vector<double>& eps_grid);

/// Certificates for A, B and a tangent family across an eps grid, as JSON.
nlohmann::json certificate_report(const std::vector<double>& eps_grid,
                                  int tangent_cuts = 9);

}  // namespace gausscc::polyapprox
