#include <doctest.h>

#include <cmath>
#include <random>

#include "gausscc/seps.hpp"
#include "oracles.hpp"

using namespace gausscc;
using namespace gausscc::seps;

namespace {

double cut_eval(const Halfplane2& h, Point2 p) {
  return h.a1 * p.x + h.a2 * p.y - h.rhs;
}

// Validity of a planar cut via the support function: sup over S_eps of the
// cut's left-hand side must not exceed rhs.
void check_cut_valid_and_violated(const Halfplane2& h, Point2 at,
                                  RiskLevel eps) {
  const auto s = support(h.a1, h.a2, eps);
  CHECK(s.value <= h.rhs + 1e-8);
  CHECK(cut_eval(h, at) > 0.0);
}

}  // namespace

TEST_CASE("RiskLevel domain checks") {
  CHECK_THROWS_AS(RiskLevel(0.0), std::domain_error);
  CHECK_THROWS_AS(RiskLevel(0.7), std::domain_error);
  CHECK_NOTHROW(RiskLevel(0.5));
  CHECK_NOTHROW(RiskLevel::wide(0.7));
  CHECK_THROWS_AS(RiskLevel::wide(1.0), std::domain_error);
}

TEST_CASE("mass of interval endpoints") {
  CHECK(mass({-2.0, 2.0}).value() ==
        doctest::Approx(0.9544997361036416).epsilon(1e-13));
  CHECK(mass({0.0, 0.0}).value() == 0.0);
  CHECK(mass({1.0, -1.0}).value() == 0.0);  // clamped
  for (double e : {0.01, 0.05, 0.2, 0.5}) {
    const Point2 p{Phi_inv(e), Phi_inv(Prob::with_complement(1.0 - e, e))};
    CHECK(mass(p).value() == doctest::Approx(1.0 - 2.0 * e).epsilon(1e-13));
  }
}

TEST_CASE("contains: membership is exact") {
  const RiskLevel eps(0.05);
  CHECK(contains({-2.0, 2.0}, eps));
  CHECK_FALSE(contains({0.0, 0.0}, eps));
  // Boundary points are members with equality.
  for (double lam : {0.2, 0.5, 0.9}) {
    const Point2 b = boundary_point(lam, eps);
    CHECK(contains(b, eps));
    CHECK(mass(b).value() == doctest::Approx(0.95).epsilon(1e-13));
  }
}

TEST_CASE("boundary_point parameterization") {
  for (double e : {0.01, 0.05, 0.1, 0.25, 0.5}) {
    const RiskLevel eps(e);
    for (double lam = 0.01; lam < 1.0; lam += 0.01) {
      const Point2 b = boundary_point(lam, eps);
      CHECK(std::fabs(mass(b).value() - (1.0 - e)) <= 1e-12);
    }
    // lambda = 1/2 is the symmetric point.
    const Point2 s = boundary_point(0.5, eps);
    CHECK(s.x == doctest::Approx(Phi_inv(e / 2)).epsilon(1e-14));
    CHECK(s.y == doctest::Approx(-Phi_inv(e / 2)).epsilon(1e-12));
  }
  // lambda -> 1: x approaches Phi_inv(eps), y diverges.
  const RiskLevel eps(0.1);
  const Point2 lim = boundary_point(1.0 - 1e-9, eps);
  CHECK(lim.x == doctest::Approx(Phi_inv(0.1)).epsilon(1e-7));
  CHECK(lim.y > 5.0);
  CHECK_THROWS_AS(boundary_point(0.0, eps), std::domain_error);
  CHECK_THROWS_AS(boundary_point(1.0, eps), std::domain_error);
}

TEST_CASE("cone membership") {
  const RiskLevel eps(0.05);
  CHECK(cone_contains({-2.0, 2.0, 1.0}, eps));
  CHECK(cone_contains({-1.0, 1.0, 0.0}, eps));
  CHECK_FALSE(cone_contains({1.0, 2.0, 0.0}, eps));
  CHECK_FALSE(cone_contains({-1.0, 1.0, -0.5}, eps));
  CHECK_FALSE(cone_contains({0.0, 0.0, 1.0}, eps));
  // Scaling invariance for z > 0.
  CHECK(cone_contains({-4.0, 4.0, 2.0}, eps));
  CHECK_THROWS_AS(cone_contains({0, 1, 1}, RiskLevel::wide(0.8)),
                  std::domain_error);
}

TEST_CASE("monotone dominance implies membership transfer") {
  const RiskLevel eps(0.05);
  CHECK(monotone_dominates({-3, 3, 0.5}, {-2, 2, 1}));
  CHECK(cone_contains({-2, 2, 1}, eps));
  CHECK(cone_contains({-3, 3, 0.5}, eps));
  const ConePoint3 q{-1, 1, 2};
  CHECK(monotone_dominates(q, q));
  CHECK_FALSE(monotone_dominates({-1, 1, 2}, {-2, 2, 1}));

  std::mt19937 rng(20240517u);
  std::uniform_real_distribution<double> coord(-4.0, 4.0), scale(0.0, 2.0);
  int transfers = 0;
  for (int i = 0; i < 2000; ++i) {
    const ConePoint3 a{coord(rng), coord(rng), scale(rng)};
    const ConePoint3 b{a.x + scale(rng), a.y - scale(rng), a.z + scale(rng)};
    REQUIRE(monotone_dominates(a, b));
    if (cone_contains(b, eps)) {
      CHECK(cone_contains(a, eps));
      ++transfers;
    }
  }
  CHECK(transfers >= 10);  // the sample actually exercises the implication
}

TEST_CASE("convexity witness: segments between members stay inside") {
  std::mt19937 rng(911u);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (double e : {0.05, 0.3, 0.5}) {
    const RiskLevel eps(e);
    const RiskLevel inner(e * 0.999);
    for (int i = 0; i < 300; ++i) {
      const Point2 p = boundary_point(0.01 + 0.98 * unif(rng), inner);
      const Point2 q = boundary_point(0.01 + 0.98 * unif(rng), inner);
      const double t = unif(rng);
      const Point2 c{t * p.x + (1 - t) * q.x, t * p.y + (1 - t) * q.y};
      CHECK(contains(c, eps));
    }
  }
}

TEST_CASE("support: diagonal direction equals 2*Phi_inv(eps/2)") {
  for (double e : {0.01, 0.05, 0.1, 0.25, 0.5}) {
    const auto s = support(1.0, -1.0, RiskLevel(e));
    CHECK(std::fabs(s.value - 2.0 * Phi_inv(e / 2)) <= 1e-9);
    REQUIRE(s.lambda.has_value());
    CHECK(*s.lambda == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("support: recession and axis cases") {
  const RiskLevel eps(0.05);
  CHECK(std::isinf(support(-1.0, 0.0, eps).value));
  CHECK(std::isinf(support(0.5, 0.3, eps).value));
  CHECK(std::isinf(support(-0.2, -1.0, eps).value));
  // lambda -> 0 limit: sup of a2*y is a2 * Phi_inv(1-eps).
  const auto s0 = support(0.0, -1.0, eps);
  CHECK(s0.value == doctest::Approx(-Phi_inv(0.95)).epsilon(1e-12));
  CHECK_FALSE(s0.maximizer.has_value());
  const auto s1 = support(1.0, 0.0, eps);
  CHECK(s1.value == doctest::Approx(Phi_inv(0.05)).epsilon(1e-12));
  CHECK_THROWS_AS(support(0.0, 0.0, eps), std::invalid_argument);
}

TEST_CASE("support matches a dense grid scan") {
  const RiskLevel eps(0.1);
  for (auto [a1, a2] : {std::pair{2.0, -3.0}, {0.4, -0.1}, {1.0, -1.0}}) {
    const auto s = support(a1, a2, eps);
    auto neg_obj = [&](double lam) {
      const Point2 b = boundary_point(lam, eps);
      return -(a1 * b.x + a2 * b.y);
    };
    const auto grid = testoracle::grid_min(neg_obj, 1e-7, 1.0 - 1e-7, 2000000);
    CHECK(s.value == doctest::Approx(-grid.second).epsilon(1e-9));
    REQUIRE(s.lambda.has_value());
    CHECK(std::fabs(*s.lambda - grid.first) <= 1e-5);
  }
}

TEST_CASE("support objective is strictly convex in lambda") {
  // Second derivative of h(lam) = -(a1*x(lam) + a2*y(lam)), using
  // d^2/du^2 Phi_inv(u) = 2*pi*Phi_inv(u)*exp(Phi_inv(u)^2).
  const double e = 0.2;
  const RiskLevel eps(e);
  for (auto [a1, a2] : {std::pair{1.0, -1.0}, {3.0, -0.5}}) {
    for (double lam = 0.05; lam < 1.0; lam += 0.05) {
      const Point2 b = boundary_point(lam, eps);
      const double x2 = 2.0 * M_PI * e * e * b.x * std::exp(b.x * b.x);
      const double y2 = 2.0 * M_PI * e * e * b.y * std::exp(b.y * b.y);
      CHECK(-(a1 * x2 + a2 * y2) > 0.0);
    }
  }
}

TEST_CASE("project: symmetric point and membership errors") {
  const RiskLevel eps(0.05);
  const auto pr = project({0.0, 0.0}, eps);
  CHECK(pr.lambda == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pr.point.x == doctest::Approx(Phi_inv(0.025)).epsilon(1e-10));
  CHECK(pr.point.y == doctest::Approx(-Phi_inv(0.025)).epsilon(1e-10));
  CHECK(std::fabs(mass(pr.point).value() - 0.95) <= 1e-10);
  CHECK_THROWS_AS(project({-3.0, 3.0}, eps), std::domain_error);
  CHECK_THROWS_AS(project(pr.point, eps), std::domain_error);  // members error
}

TEST_CASE("project: optimality against a dense lambda scan") {
  const RiskLevel eps(0.05);
  const Point2 p{Phi_inv(0.05) + 0.1, Phi_inv(0.95)};
  REQUIRE_FALSE(contains(p, eps));
  const auto pr = project(p, eps);
  CHECK(pr.point.y >= Phi_inv(0.95) - 1e-12);
  auto dist = [&](double lam) {
    const Point2 b = boundary_point(lam, eps);
    return 0.5 * ((b.x - p.x) * (b.x - p.x) + (b.y - p.y) * (b.y - p.y));
  };
  const auto grid = testoracle::grid_min(dist, 1e-7, 1.0 - 1e-7, 1000000);
  CHECK(std::fabs(pr.lambda - grid.first) <= 1e-6);
}

TEST_CASE("project: residual is orthogonal to the boundary tangent") {
  std::mt19937 rng(4242u);
  std::uniform_real_distribution<double> box(-4.0, 4.0);
  const RiskLevel eps(0.1);
  int tested = 0;
  while (tested < 100) {
    const Point2 p{box(rng), box(rng)};
    if (contains(p, eps)) continue;
    ++tested;
    const auto pr = project(p, eps);
    CHECK(std::fabs(mass(pr.point).value() - 0.9) <= 1e-10);
    const double e = eps.eps();
    const double tx = e * std::sqrt(2 * M_PI) * std::exp(0.5 * pr.point.x * pr.point.x);
    const double ty = e * std::sqrt(2 * M_PI) * std::exp(0.5 * pr.point.y * pr.point.y);
    const double rx = p.x - pr.point.x, ry = p.y - pr.point.y;
    const double rn = std::hypot(rx, ry), tn = std::hypot(tx, ty);
    REQUIRE(rn > 0.0);
    CHECK(std::fabs(rx * tx + ry * ty) / (rn * tn) <= 1e-6);
  }
}

TEST_CASE("separate_gradient at the origin reproduces the weak cut") {
  for (double e : {0.05, 0.2, 0.5}) {
    const RiskLevel eps(e);
    const auto h = separate_gradient({0.0, 0.0}, eps);
    CHECK(h.a1 == doctest::Approx(1.0));
    CHECK(h.a2 == doctest::Approx(-1.0));
    CHECK(std::fabs(h.rhs - (-std::sqrt(2 * M_PI) * (1.0 - e))) <= 1e-12);
    check_cut_valid_and_violated(h, {0.0, 0.0}, eps);
  }
  // The weak cut is not tangent: the support value stays strictly below rhs.
  const RiskLevel eps(0.05);
  const auto h = separate_gradient({0.0, 0.0}, eps);
  const auto s = support(h.a1, h.a2, eps);
  CHECK(h.rhs - s.value > 0.5);
}

TEST_CASE("separate_gradient separates nudged boundary points") {
  const RiskLevel eps(0.1);
  for (double lam : {0.15, 0.5, 0.85}) {
    const Point2 b = boundary_point(lam, eps);
    const Point2 out{b.x + 1e-3 * phi(b.x), b.y - 1e-3 * phi(b.y)};
    REQUIRE_FALSE(contains(out, eps));
    const auto h = separate_gradient(out, eps);
    check_cut_valid_and_violated(h, out, eps);
  }
  CHECK_THROWS_AS(separate_gradient({-3.0, 3.0}, eps), std::domain_error);
}

TEST_CASE("separate_tangent is tight") {
  const RiskLevel eps(0.05);
  const auto h = separate_tangent({0.0, 0.0}, eps);
  CHECK(h.a1 == doctest::Approx(1.0));
  CHECK(h.a2 == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(h.rhs == doctest::Approx(2.0 * Phi_inv(0.025)).epsilon(1e-9));

  std::mt19937 rng(77u);
  std::uniform_real_distribution<double> box(-4.0, 4.0);
  int tested = 0;
  while (tested < 60) {
    const Point2 p{box(rng), box(rng)};
    if (contains(p, eps)) continue;
    ++tested;
    const auto cut = separate_tangent(p, eps);
    const auto s = support(cut.a1, cut.a2, eps);
    CHECK(s.value == doctest::Approx(cut.rhs).epsilon(1e-8));
    CHECK(cut_eval(cut, p) > 0.0);
  }
  CHECK_THROWS_AS(separate_tangent({-3.0, 3.0}, eps), std::domain_error);
}

TEST_CASE("cone_separate: lifted cuts, axis cuts, z sign handling") {
  const RiskLevel eps(0.05);
  const auto c = cone_separate({0.0, 0.0, 1.0}, eps);
  CHECK(c.a1 == doctest::Approx(1.0));
  CHECK(c.a2 == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(c.a3 == doctest::Approx(-2.0 * Phi_inv(0.025)).epsilon(1e-9));

  const auto cx = cone_separate({1.0, 5.0, 0.0}, eps);
  CHECK(cx.a1 == 1.0);
  CHECK(cx.a2 == 0.0);
  CHECK(cx.a3 == 0.0);
  const auto cy = cone_separate({-1.0, -5.0, 0.0}, eps);
  CHECK(cy.a2 == -1.0);
  const auto cz = cone_separate({-1.0, 1.0, -2.0}, eps);
  CHECK(cz.a3 == -1.0);
  CHECK_THROWS_AS(cone_separate({-2.0, 2.0, 1.0}, eps), std::domain_error);

  // Validity across scaled boundary points; violation at the query point.
  std::mt19937 rng(5150u);
  std::uniform_real_distribution<double> box(-3.0, 3.0), zdist(0.1, 2.5);
  int tested = 0;
  while (tested < 40) {
    const ConePoint3 q{box(rng), box(rng), zdist(rng)};
    if (cone_contains(q, eps)) continue;
    ++tested;
    const auto cut = cone_separate(q, eps);
    CHECK(cut.a1 * q.x + cut.a2 * q.y + cut.a3 * q.z > 0.0);
    for (double lam = 0.05; lam < 1.0; lam += 0.05) {
      const Point2 b = boundary_point(lam, eps);
      for (double z : {0.5, 1.0, 2.0}) {
        CHECK(cut.a1 * z * b.x + cut.a2 * z * b.y + cut.a3 * z <= 1e-8);
      }
    }
  }
}

TEST_CASE("smooth_value_grad: z = 1 specialization and boundary zero") {
  const RiskLevel eps(0.05);
  const auto g = smooth_value_grad({-1.0, 2.0, 1.0}, eps, SmoothForm::plain);
  CHECK(g.value == doctest::Approx(Phi(2.0).value() - Phi(-1.0).value() - 0.95)
                       .epsilon(1e-14));
  CHECK(g.grad[0] == doctest::Approx(-phi(-1.0)).epsilon(1e-14));
  CHECK(g.grad[1] == doctest::Approx(phi(2.0)).epsilon(1e-14));

  const Point2 b = boundary_point(0.35, eps);
  const auto gb = smooth_value_grad({b.x, b.y, 1.0}, eps, SmoothForm::plain);
  CHECK(std::fabs(gb.value) <= 1e-12);
  const auto gl = smooth_value_grad({b.x, b.y, 1.0}, eps, SmoothForm::log);
  CHECK(std::fabs(gl.value) <= 1e-12);

  CHECK_THROWS_AS(smooth_value_grad({0, 1, 0.0}, eps, SmoothForm::plain),
                  std::domain_error);
  CHECK_THROWS_AS(smooth_value_grad({1, -1, 1.0}, eps, SmoothForm::log),
                  std::domain_error);
}

TEST_CASE("smooth_value_grad gradients match finite differences") {
  std::mt19937 rng(31337u);
  std::uniform_real_distribution<double> ud(-2.5, 0.5), vd(0.1, 3.0),
      zd(0.3, 2.0);
  const RiskLevel eps(0.1);
  for (int i = 0; i < 50; ++i) {
    const double z = zd(rng);
    const double u = ud(rng);
    const ConePoint3 q{u * z, (u + vd(rng)) * z, z};
    for (auto form : {SmoothForm::plain, SmoothForm::log}) {
      const auto g = smooth_value_grad(q, eps, form);
      const double step = 1e-6;
      const std::array<ConePoint3, 3> plus = {
          ConePoint3{q.x + step, q.y, q.z}, {q.x, q.y + step, q.z},
          {q.x, q.y, q.z + step}};
      const std::array<ConePoint3, 3> minus = {
          ConePoint3{q.x - step, q.y, q.z}, {q.x, q.y - step, q.z},
          {q.x, q.y, q.z - step}};
      for (int k = 0; k < 3; ++k) {
        const double fd = (smooth_value_grad(plus[k], eps, form).value -
                           smooth_value_grad(minus[k], eps, form).value) /
                          (2 * step);
        const double scale = std::max(1.0, std::fabs(g.grad[k]));
        CHECK(std::fabs(fd - g.grad[k]) / scale <= 1e-5);
      }
    }
  }
}
