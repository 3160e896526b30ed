#include <doctest.h>

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "squeeze/domain.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/qmc.hpp"

using namespace squeeze;
using test::cv;
using test::rv;

static constexpr double kTight = 1e-12;
static constexpr double kExitTol = 1e-9;

namespace {

/// bisection oracle for ray exits, independent of the closed forms
double bisect_exit(const ConvexDomain& dom, const CVec& q, const CVec& w,
                   double hi_start = 64.0) {
  double lo = 0.0, hi = hi_start;
  REQUIRE(dom.contains(q));
  REQUIRE(!dom.contains(q + hi * w));
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dom.contains(q + mid * w) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<ConvexDomain> bounded_catalog() {
  std::vector<ConvexDomain> out;
  out.push_back(test::unit_ball(2));
  out.push_back(test::flat_ellipsoid());
  out.push_back(test::skew_ellipsoid());
  out.push_back(test::real_ellipsoid());
  out.push_back(test::bidisc());
  out.push_back(test::cube(2));
  Intersection mix;
  mix.members.push_back(test::unit_ball(2));
  mix.members.push_back(test::cube(2, 0.8));
  out.push_back(ConvexDomain(std::move(mix), CVec::Zero(2)));
  return out;
}

}  // namespace

TEST_CASE("membership oracles at hand-picked points") {
  const auto ball = test::unit_ball(2);
  CHECK(ball.contains(cv({{0.5, 0.5}, {0.0, 0.0}})));
  CHECK(!ball.contains(cv({{0.8, 0.0}, {0.0, 0.8}})));

  const auto ell = test::flat_ellipsoid();
  CHECK(ell.contains(cv({{0.0, 0.0}, {0.0, 1.9}})));
  CHECK(!ell.contains(cv({{0.0, 0.0}, {0.0, 2.1}})));
  CHECK(!ell.contains(cv({{1.05, 0.0}, {0.0, 0.0}})));

  const auto bi = test::bidisc();
  CHECK(bi.contains(cv({{0.9, 0.0}, {0.0, 0.9}})));
  CHECK(!bi.contains(cv({{1.1, 0.0}, {0.0, 0.0}})));

  const auto cube = test::cube(2);
  CHECK(cube.contains(cv({{0.9, 0.9}, {0.9, 0.9}})));
  CHECK(!cube.contains(cv({{0.9, 1.1}, {0.0, 0.0}})));
}

TEST_CASE("scalar metadata: dimension, scale, bounding radius") {
  const auto ell = test::flat_ellipsoid();
  CHECK(ell.dim() == 2);
  CHECK(ell.bounded());
  CHECK(ell.bounding_radius() == doctest::Approx(2.0));
  CHECK(ell.scale() > 0.0);
  CHECK(ell.smooth());
  CHECK(!test::cube(2).smooth());
  CHECK(!test::bidisc().smooth());
}

TEST_CASE("ray exits match the bisection oracle on the catalog") {
  const auto dirs = qmc::sphere_directions(4, 40, 3, 1);
  for (const auto& dom : bounded_catalog()) {
    const CVec q = cv({{0.1, -0.05}, {0.2, 0.15}});
    REQUIRE(dom.contains(q));
    for (const RVec& d : dirs) {
      const CVec w = to_complex(d);
      const double t = dom.ray_exit(q, w);
      CHECK(std::abs(t - bisect_exit(dom, q, w)) < kExitTol);
    }
  }
}

TEST_CASE("ray exit scales inversely with the direction length") {
  const auto dom = test::skew_ellipsoid();
  const CVec q = cv({{0.2, 0.1}, {-0.1, 0.0}});
  const CVec w = cv({{0.3, -0.4}, {0.5, 0.1}});
  const double t1 = dom.ray_exit(q, w);
  const double t2 = dom.ray_exit(q, CVec(2.0 * w));
  CHECK(t1 == doctest::Approx(2.0 * t2).epsilon(1e-12));
}

TEST_CASE("ray exit gradient agrees with finite differences") {
  const double h = 1e-6;
  for (const auto& dom : bounded_catalog()) {
    const CVec q = cv({{0.15, 0.0}, {0.0, 0.1}});
    const CVec w = cv({{0.6, 0.3}, {-0.2, 0.7}});
    const RayExit ex = dom.ray_exit_grad(q, w);
    CHECK(ex.t == doctest::Approx(dom.ray_exit(q, w)).epsilon(1e-12));
    const RVec wr = to_real(w);
    for (int j = 0; j < 4; ++j) {
      RVec wp = wr, wm = wr;
      wp[j] += h;
      wm[j] -= h;
      const double fd = (dom.ray_exit(q, to_complex(wp)) -
                         dom.ray_exit(q, to_complex(wm))) /
                        (2.0 * h);
      CHECK(ex.gradient[j] == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("supporting hyperplanes pass through the contact and exclude the domain") {
  for (const auto& dom : bounded_catalog()) {
    const auto pts = dom.boundary_samples(50, 17, 2);
    const auto probes = qmc::ball_points(4, 50, 23, 5);
    for (const CVec& z : pts) {
      const SupportingPlane sp = dom.supporting_hyperplane_at(z);
      CHECK(std::abs(sp.plane.normal.norm() - 1.0) < kTight);
      CHECK(std::abs(sp.plane.violation(z)) < 1e-7);
      for (const RVec& p : probes) {
        const CVec inside = dom.witness() + 0.9 * dom.ray_exit(dom.witness(),
                                                               to_complex(p)) *
                                                to_complex(p);
        CHECK(sp.plane.violation(inside) < 1e-9);
      }
    }
  }
}

TEST_CASE("ball supporting normal is radial") {
  const auto ball = test::unit_ball(2);
  const CVec z = cv({{0.6, 0.0}, {0.0, 0.8}});
  const auto sp = ball.supporting_hyperplane_at(z);
  CHECK((sp.plane.normal - z).norm() < 1e-9);
  CHECK(sp.plane.offset == doctest::Approx(1.0));
  CHECK(!sp.ambiguous);
}

TEST_CASE("polytope vertex contact reports ambiguity") {
  const auto cube = test::cube(1);
  const auto sp = cube.supporting_hyperplane_at(cv({{1.0, 1.0}}));
  CHECK(sp.ambiguous);
  CHECK(std::abs(sp.plane.violation(cv({{1.0, 1.0}}))) < 1e-9);
}

TEST_CASE("boundary samples sit on the boundary, deterministically") {
  for (const auto& dom : bounded_catalog()) {
    const auto pts = dom.boundary_samples(100, 7, 1);
    REQUIRE(pts.size() == 100);
    for (const CVec& z : pts)
      CHECK(std::abs(dom.boundary_residual(z)) < dom.boundary_tol());
    const auto again = dom.boundary_samples(100, 7, 1);
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK((pts[i] - again[i]).norm() == 0.0);
  }
}

TEST_CASE("boundary jet of the ball is 2(z-c) and 2I") {
  const auto ball = test::unit_ball(2);
  const CVec z = cv({{0.0, 0.6}, {-0.8, 0.0}});
  const BoundaryJet jet = ball.boundary_hessian(z);
  CHECK((jet.gradient - 2.0 * to_real(z)).norm() < kTight);
  CHECK((jet.hessian - 2.0 * RMat::Identity(4, 4)).norm() < kTight);
}

TEST_CASE("boundary jet of the diagonal ellipsoid has per-axis curvature") {
  const auto dom = test::real_ellipsoid();  // axes re (1, 1.5), im (0.8, 1.2)
  const CVec z = cv({{1.0, 0.0}, {0.0, 0.0}});
  const BoundaryJet jet = dom.boundary_hessian(z);
  CHECK(jet.gradient[0] == doctest::Approx(2.0));
  CHECK(jet.hessian(0, 0) == doctest::Approx(2.0));
  CHECK(jet.hessian(1, 1) == doctest::Approx(2.0 / (0.8 * 0.8)));
  CHECK(jet.hessian(2, 2) == doctest::Approx(2.0 / (1.5 * 1.5)));
  CHECK(jet.hessian(3, 3) == doctest::Approx(2.0 / (1.2 * 1.2)));
}

TEST_CASE("hermitian ellipsoid jet matches finite differences of the form") {
  const auto dom = test::skew_ellipsoid();
  const CVec z0 = dom.boundary_samples(1, 3, 9).front();
  const BoundaryJet jet = dom.boundary_hessian(z0);
  const auto rho = [&](const RVec& x) {
    const CVec z = to_complex(x);
    const auto& k = std::get<HermitianEllipsoid>(dom.kind());
    const CVec d = z - k.center;
    return std::real(d.dot(k.form * d)) - 1.0;
  };
  const RVec x0 = to_real(z0);
  const double h = 1e-5;
  for (int j = 0; j < 4; ++j) {
    RVec xp = x0, xm = x0;
    xp[j] += h;
    xm[j] -= h;
    CHECK(jet.gradient[j] ==
          doctest::Approx((rho(xp) - rho(xm)) / (2.0 * h)).epsilon(1e-6));
  }
}

TEST_CASE("unbounded polytope refuses boundary sampling") {
  HalfspacePolytope half;
  CVec n1 = CVec::Zero(1);
  n1[0] = 1.0;
  half.faces.push_back(RealHyperplane{n1, 1.0});
  const ConvexDomain dom(std::move(half), CVec::Zero(1));
  CHECK(!dom.bounded());
  CHECK_THROWS_AS(dom.bounding_radius(), UnboundedDomain);
  CHECK_THROWS_AS(dom.boundary_samples(10, 1, 0), UnboundedDomain);
  CHECK(std::isinf(dom.ray_exit(CVec::Zero(1), cv({{-1.0, 0.0}}))));
}

TEST_CASE("construction rejects malformed parameters") {
  CHECK_THROWS_AS(ConvexDomain(Ball{CVec::Zero(2), -1.0}, CVec::Zero(2)),
                  InvalidInput);
  CMat notherm(2, 2);
  notherm << cplx(1, 0), cplx(0.5, 0.1), cplx(0.2, 0.1), cplx(1, 0);
  CHECK_THROWS_AS(
      ConvexDomain(HermitianEllipsoid{CVec::Zero(2), notherm}, CVec::Zero(2)),
      InvalidInput);
  HalfspacePolytope p;
  p.faces.push_back(RealHyperplane{cv({{2.0, 0.0}}), 1.0});  // not unit
  CHECK_THROWS_AS(ConvexDomain(std::move(p), CVec::Zero(1)), InvalidInput);
  CHECK_THROWS_AS(test::cube(0), InvalidInput);
  // witness outside
  CHECK_THROWS_AS(ConvexDomain(Ball{CVec::Zero(1), 1.0}, cv({{2.0, 0.0}})),
                  InvalidInput);
  // dimension over the cap
  CHECK_THROWS_AS(ConvexDomain(Ball{CVec::Zero(9), 1.0}, CVec::Zero(9)),
                  InvalidInput);
}

TEST_CASE("mismatched point dimension raises instead of asserting") {
  const auto ball = test::unit_ball(2);
  CHECK_THROWS_AS(ball.contains(CVec::Zero(3)), InvalidInput);
}

TEST_CASE("json round trip preserves membership behavior") {
  const auto probes = qmc::ball_points(4, 64, 31, 7);
  for (const auto& dom : bounded_catalog()) {
    const ConvexDomain back = ConvexDomain::from_json(dom.to_json());
    CHECK(back.dim() == dom.dim());
    CHECK(back.bounded() == dom.bounded());
    for (const RVec& p : probes) {
      const CVec z = 1.4 * to_complex(p);
      CHECK(back.contains(z) == dom.contains(z));
    }
  }
}

TEST_CASE("domain file loading wraps parse failures") {
  CHECK_THROWS_AS(ConvexDomain::load("/nonexistent/file.json"), InvalidInput);
  const std::string path = "/tmp/squeeze_test_baddomain.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(ConvexDomain::load(path), InvalidInput);
  {
    std::ofstream out(path);
    out << R"({"kind": "torus", "parameters": {}, "witness_point": [[0,0]]})";
  }
  CHECK_THROWS_AS(ConvexDomain::load(path), InvalidInput);
}

TEST_CASE("intersection membership is the conjunction of its members") {
  Intersection mix;
  mix.members.push_back(test::unit_ball(2));
  mix.members.push_back(test::cube(2, 0.8));
  const ConvexDomain dom(std::move(mix), CVec::Zero(2));
  CHECK(dom.contains(cv({{0.7, 0.0}, {0.0, 0.5}})));
  CHECK(!dom.contains(cv({{0.9, 0.0}, {0.0, 0.3}})));   // leaves the cube
  CHECK(!dom.contains(cv({{0.75, 0.0}, {0.75, 0.0}})));  // leaves the ball
  const CVec q = cv({{0.1, 0.0}, {0.0, 0.0}});
  const CVec w = cv({{1.0, 0.0}, {0.0, 0.0}});
  CHECK(dom.ray_exit(q, w) == doctest::Approx(0.7).epsilon(1e-12));
}
