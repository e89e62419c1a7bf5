#include "gausscc/polyapprox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gausscc::polyapprox {

namespace {

Halfplane2 axis_cut_x(double eps) { return {1.0, 0.0, Phi_inv(eps)}; }

Halfplane2 axis_cut_y(double eps) {
  // y >= Phi_inv(1-eps), stored as -y <= -Phi_inv(1-eps).
  return {0.0, -1.0, -Phi_inv(Prob::with_complement(1.0 - eps, eps))};
}

Halfplane2 tangent_cut(double lambda, RiskLevel eps) {
  const Point2 b = seps::boundary_point(lambda, eps);
  const double a1 = phi(b.x), a2 = -phi(b.y);
  const double m = std::max(a1, -a2);
  return {a1 / m, a2 / m, (a1 * b.x + a2 * b.y) / m};
}

// Pairwise cut intersection with feasibility filtering; small planar
// polyhedra only, exactness matters more than speed here.
std::vector<Point2> enumerate_vertices(const std::vector<Halfplane2>& cuts) {
  std::vector<Point2> verts;
  const int n = static_cast<int>(cuts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& ci = cuts[i];
      const auto& cj = cuts[j];
      const double det = ci.a1 * cj.a2 - ci.a2 * cj.a1;
      if (std::fabs(det) < 1e-12) continue;
      const Point2 v{(ci.rhs * cj.a2 - ci.a2 * cj.rhs) / det,
                     (ci.a1 * cj.rhs - ci.rhs * cj.a1) / det};
      bool feasible = true;
      for (const auto& c : cuts) {
        if (c.a1 * v.x + c.a2 * v.y > c.rhs + 1e-9 * (1.0 + std::fabs(c.rhs))) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      const bool dup = std::any_of(verts.begin(), verts.end(), [&](Point2 w) {
        return std::fabs(w.x - v.x) <= 1e-8 && std::fabs(w.y - v.y) <= 1e-8;
      });
      if (!dup) verts.push_back(v);
    }
  }
  std::sort(verts.begin(), verts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x; });
  return verts;
}

const std::vector<std::pair<double, double>> kRays = {{-1.0, 0.0}, {0.0, 1.0}};

}  // namespace

Polyhedron2 build_A(RiskLevel eps) {
  Polyhedron2 p;
  p.cuts = {axis_cut_x(eps.eps()), axis_cut_y(eps.eps())};
  p.vertices = enumerate_vertices(p.cuts);
  p.rays = kRays;
  return p;
}

Polyhedron2 build_B(RiskLevel eps) {
  const double e = eps.eps();
  Polyhedron2 p;
  p.cuts = {axis_cut_x(e), axis_cut_y(e),
            Halfplane2{1.0, -1.0, 2.0 * Phi_inv(e / 2)}};
  p.vertices = enumerate_vertices(p.cuts);
  p.rays = kRays;
  return p;
}

Polyhedron2 build_tangent(RiskLevel eps, int n_cuts) {
  if (n_cuts < 2) throw std::domain_error("build_tangent: need n_cuts >= 2");
  Polyhedron2 p;
  p.cuts.push_back(axis_cut_y(eps.eps()));  // lambda -> 0 limit
  for (int i = 1; i + 1 < n_cuts; ++i)
    p.cuts.push_back(tangent_cut(static_cast<double>(i) / (n_cuts - 1), eps));
  p.cuts.push_back(axis_cut_x(eps.eps()));  // lambda -> 1 limit
  p.vertices = enumerate_vertices(p.cuts);
  p.rays = kRays;
  return p;
}

AlphaCertificate certify_alpha(const Polyhedron2& P, RiskLevel eps) {
  const auto rays_ok = [&] {
    if (P.rays.size() != 2) return false;
    const auto has = [&](double rx, double ry) {
      return std::any_of(P.rays.begin(), P.rays.end(), [&](auto r) {
        return r.first == rx && r.second == ry;
      });
    };
    return has(-1.0, 0.0) && has(0.0, 1.0);
  }();
  if (!rays_ok)
    throw std::domain_error(
        "certify_alpha: extreme rays must be exactly (-1,0) and (0,1)");
  for (const auto& c : P.cuts) {
    const auto s = seps::support(c.a1, c.a2, eps);
    if (!(s.value <= c.rhs + 1e-8))
      throw std::domain_error("certify_alpha: cut is not valid for S_eps");
  }
  if (P.vertices.empty())
    throw std::domain_error("certify_alpha: polyhedron has no vertices");
  AlphaCertificate cert;
  cert.alpha = 0.0;
  for (const auto& v : P.vertices) {
    const double deficit = 1.0 - seps::mass(v).value();
    if (deficit > cert.worst_mass_deficit) {
      cert.worst_mass_deficit = deficit;
      cert.worst_vertex = v;
    }
  }
  cert.alpha = cert.worst_mass_deficit / eps.eps();
  return cert;
}

Polyhedron2 build_conservative(RiskLevel eps, double alpha, Family family,
                               int n_cuts) {
  if (alpha < 1.0)
    throw std::domain_error("build_conservative: alpha must be >= 1");
  const RiskLevel shrunk(eps.eps() / alpha);
  Polyhedron2 p;
  switch (family) {
    case Family::A: p = build_A(shrunk); break;
    case Family::B: p = build_B(shrunk); break;
    case Family::tangent: p = build_tangent(shrunk, n_cuts); break;
  }
  for (const auto& v : p.vertices) {
    // alpha-tight families (A at alpha = 2) sit exactly on the boundary;
    // allow rounding of the equality case.
    if (seps::mass(v).value() < 1.0 - eps.eps() - 1e-12)
      throw std::domain_error(
          "build_conservative: alpha understates the family's factor");
  }
  return p;
}

TailLemmaReport verify_tail_lemmas(const std::vector<double>& eps_grid) {
  TailLemmaReport rep;
  const double q34 = Phi_inv(0.75);
  rep.fprime_half =
      std::sqrt(2.0 * M_PI) * (1.0 - 0.5 * std::exp(0.5 * q34 * q34));

  auto upper_quantile = [](double tail) {
    return Phi_inv(Prob::with_complement(1.0 - tail, tail));
  };
  const double e0 = 1e-6;
  const double qa = upper_quantile(e0 / 2), qb = upper_quantile(e0);
  rep.limit_value = qa * qa - qb * qb;
  rep.limit_target = 2.0 * std::log(2.0);
  rep.limit_claim_met = std::fabs(rep.limit_value - rep.limit_target) <= 1e-3;

  auto f = [&](double e) { return upper_quantile(e / 2) - upper_quantile(e); };
  for (double e : eps_grid) {
    if (!(e > 0.0 && e <= 0.5))
      throw std::domain_error("verify_tail_lemmas: grid point outside (0,1/2]");
    if (f(e) < f(e / 2)) rep.tail2_violations.push_back(e);
    if (Phi_inv(e) - 2.0 * Phi_inv(e / 2) < upper_quantile(e / 4))
      rep.fourbound_violations.push_back(e);
  }
  return rep;
}

nlohmann::json certificate_report(const std::vector<double>& eps_grid,
                                  int tangent_cuts) {
  nlohmann::json out = nlohmann::json::array();
  for (double e : eps_grid) {
    const RiskLevel eps(e);
    nlohmann::json row;
    row["eps"] = e;
    for (auto [key, poly] :
         {std::pair{"A", build_A(eps)}, {"B", build_B(eps)},
          {"tangent", build_tangent(eps, tangent_cuts)}}) {
      const auto cert = certify_alpha(poly, eps);
      row[key] = {{"alpha", cert.alpha},
                  {"worst_vertex", {cert.worst_vertex.x, cert.worst_vertex.y}},
                  {"worst_mass_deficit", cert.worst_mass_deficit}};
    }
    row["tangent_cuts"] = tangent_cuts;
    out.push_back(row);
  }
  return out;
}

}  // namespace gausscc::polyapprox
