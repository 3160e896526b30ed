#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "squeeze/certificate.hpp"
#include "squeeze/convex_pipeline.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/qmc.hpp"

using namespace squeeze;
using test::cv;

/// center-of-ball reference value 1/(3 sqrt(2)) in C^2
static const double kBallCenterBound = 1.0 / (3.0 * std::sqrt(2.0));

namespace {

void check_envelope_invariants(const ConvexDomain& dom, const CVec& q) {
  const Frame fr = build_frame(dom, q);
  const CMat rows = envelope_rows(dom, fr);
  const int n = dom.dim();
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(rows.row(k).norm() - 1.0) < 1e-9);
    CHECK(rows(k, k).imag() == 0.0);
    CHECK(rows(k, k).real() > 0.0);
    CHECK(rows(k, k).real() >= 1.0 / std::sqrt(double(k + 1)) - 1e-6);
    for (int l = k + 1; l < n; ++l) CHECK(rows(k, l) == cplx(0.0, 0.0));
    for (int l = 0; l < k; ++l)
      CHECK(std::abs(rows(k, l)) <= rows(k, k).real() + 1e-8);
  }
  // first row is exactly the first basis vector
  CHECK((rows.row(0).transpose() - CVec::Unit(n, 0)).norm() < 1e-9);
}

}  // namespace

TEST_CASE("stretch map sends the frame to the standard basis") {
  const auto dom = test::flat_ellipsoid();
  const CVec q = cv({{0.2, 0.1}, {-0.3, 0.2}});
  const Frame fr = build_frame(dom, q);
  const MapChain stretch = stretch_map(fr);
  CHECK(stretch.apply(q).norm() < 1e-12);
  for (int k = 0; k < 2; ++k) {
    const CVec img = stretch.apply(fr.contacts[k]);
    CHECK((img - CVec::Unit(2, k)).norm() < 1e-9);
  }
}

TEST_CASE("envelope rows on the ball: identity at the center, closed form off it") {
  const auto ball = test::unit_ball(2);
  // center: contacts are the frame points themselves, normals the directions
  const Frame fc = build_frame(ball, CVec::Zero(2));
  CHECK((envelope_rows(ball, fc) - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-8);

  // q = 0.3 e1: row 1 is (lam1 |q|, lam2^2) normalized, real by symmetry
  const CVec q = cv({{0.3, 0.0}, {0.0, 0.0}});
  const Frame fr = build_frame(ball, q);
  const CMat rows = envelope_rows(ball, fr);
  const double lam1 = 0.7, lam2 = std::sqrt(1.0 - 0.09);
  const double nrm = std::hypot(lam1 * 0.3, lam2 * lam2);
  CHECK((rows.row(0).transpose() - CVec(CVec::Unit(2, 0))).norm() < 1e-9);
  CHECK(std::abs(rows(1, 0)) == doctest::Approx(lam1 * 0.3 / nrm).epsilon(1e-8));
  CHECK(rows(1, 1).real() == doctest::Approx(lam2 * lam2 / nrm).epsilon(1e-8));
  CHECK(rows(1, 1).imag() == 0.0);
}

TEST_CASE("envelope invariants hold across the domain catalog") {
  check_envelope_invariants(test::unit_ball(2), cv({{0.3, 0.1}, {0.0, -0.2}}));
  check_envelope_invariants(test::flat_ellipsoid(),
                            cv({{0.25, -0.1}, {0.4, 0.3}}));
  check_envelope_invariants(test::skew_ellipsoid(), cv({{0.1, 0.2}, {-0.15, 0.05}}));
  check_envelope_invariants(test::bidisc(), cv({{0.4, 0.1}, {-0.2, 0.3}}));
  check_envelope_invariants(test::cube(2), cv({{0.5, -0.3}, {0.2, 0.6}}));
  check_envelope_invariants(test::real_ellipsoid(), cv({{0.2, 0.1}, {0.3, -0.4}}));
}

TEST_CASE("stretched domain contains the contact-disc hull") {
  for (const auto& dom :
       {test::unit_ball(2), test::flat_ellipsoid(), test::skew_ellipsoid(),
        test::bidisc(), test::cube(2)}) {
    const CVec q = cv({{0.2, 0.05}, {-0.1, 0.15}});
    const Frame fr = build_frame(dom, q);
    const auto report = acorn_check(dom, fr);
    CHECK(report.ok);
    CHECK(report.checked >= 2000);
    CHECK(report.failures == 0);
  }
}

TEST_CASE("convex chain centers the base point and stays injective") {
  const auto dom = test::skew_ellipsoid();
  const CVec q = cv({{0.15, -0.2}, {0.1, 0.1}});
  const MapChain chain = build_convex_chain(dom, q);
  CHECK(chain.apply(q).norm() < 1e-11);
  // image of interior samples is inside the unit ball
  for (const auto& z : interior_samples(dom, 200, 3)) {
    CHECK(chain.apply(z).norm() < 1.0 + 1e-12);
  }
}

TEST_CASE("ball center bound matches the closed-form reference") {
  const auto res = convex_bound(test::unit_ball(2), CVec::Zero(2));
  CHECK(res.certificate.bound == doctest::Approx(kBallCenterBound).epsilon(5e-3));
  CHECK(res.certificate.bound <= kBallCenterBound + 1e-9);
  CHECK(res.delta_analytic == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(res.certificate.outer_radius == 1.0);
  CHECK(res.inner.raw >= res.certificate.bound);
}

TEST_CASE("disc center bound approaches one third") {
  const auto res = convex_bound(test::unit_ball(1), CVec::Zero(1));
  CHECK(res.certificate.bound == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  CHECK(res.certificate.bound <= 1.0 / 3.0 + 1e-9);
}

TEST_CASE("bidisc center bound agrees with the ball value") {
  const auto res = convex_bound(test::bidisc(), CVec::Zero(2));
  CHECK(res.certificate.bound ==
        doctest::Approx(kBallCenterBound).epsilon(5e-3));
}

TEST_CASE("convex bound certificates replay cleanly") {
  const auto dom = test::flat_ellipsoid();
  const auto res = convex_bound(dom, cv({{0.3, 0.0}, {0.0, 0.5}}));
  ReplayOptions opts;
  opts.sphere_samples = 2000;
  opts.boundary_samples = 2000;
  const auto rep = replay(res.certificate, opts);
  CHECK(rep.ok);
  CHECK(rep.detail.empty());
  CHECK(rep.base_point_residual < 1e-11);
  CHECK(rep.worst_boundary_norm <= 1.0 + 1e-9);
}

TEST_CASE("inflating a certificate bound is caught on replay") {
  const auto dom = test::unit_ball(2);
  auto res = convex_bound(dom, CVec::Zero(2));
  auto cert = res.certificate;
  cert.bound *= 1.05;
  cert.inner_radius = cert.bound;
  const auto rep = replay(cert);
  CHECK(!rep.ok);
  CHECK(!rep.detail.empty());
}

TEST_CASE("convex bound is stable under a unitary rotation of the domain") {
  const auto dom = test::skew_ellipsoid();
  const CVec q = cv({{0.2, 0.1}, {0.0, -0.15}});
  const double base = convex_bound(dom, q).certificate.bound;

  CMat u(2, 2);
  const double c = std::cos(0.9), s = std::sin(0.9);
  u << cplx(c, 0.0), cplx(-s, 0.0), cplx(s, 0.0), cplx(c, 0.0);
  const auto& kell = std::get<HermitianEllipsoid>(dom.kind());
  CMat rq = u * kell.form * u.adjoint();
  rq = ((rq + CMat(rq.adjoint())) / 2.0).eval();
  const ConvexDomain rdom(HermitianEllipsoid{CVec::Zero(2), rq}, CVec::Zero(2));
  const double rotated = convex_bound(rdom, CVec(u * q)).certificate.bound;
  CHECK(std::abs(base - rotated) < 1e-6);
}

TEST_CASE("interior samples are interior and reach near the boundary") {
  const auto dom = test::flat_ellipsoid();
  const auto pts = interior_samples(dom, 300, 9);
  REQUIRE(pts.size() == 300);
  double shallowest = 1e300, deepest = 0.0;
  for (const CVec& z : pts) {
    CHECK(dom.contains(z));
    const double depth = -dom.boundary_residual(z);
    shallowest = std::min(shallowest, depth);
    deepest = std::max(deepest, depth);
  }
  CHECK(shallowest < 0.1);  // some samples hug the boundary
  CHECK(deepest > 0.3);     // others sit deep inside
}

TEST_CASE("constant scan reports per-point errors without aborting") {
  const auto dom = test::flat_ellipsoid();
  std::vector<CVec> pts = interior_samples(dom, 4, 11);
  pts.push_back(cv({{5.0, 0.0}, {0.0, 0.0}}));  // exterior: must fail alone
  const auto scan = constant_scan(dom, pts);
  CHECK(scan.succeeded == 4);
  REQUIRE(scan.entries.size() == 5);
  CHECK(!scan.entries.back().error.empty());
  CHECK(scan.constant > 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(scan.entries[i].error.empty());
    CHECK(scan.entries[i].bound >= scan.constant - 1e-12);
  }
}

TEST_CASE("constant scan with no usable points raises") {
  const auto dom = test::unit_ball(2);
  CHECK_THROWS_AS(constant_scan(dom, {}), InvalidInput);
  CHECK_THROWS_AS(constant_scan(dom, {cv({{2.0, 0.0}, {0.0, 0.0}})}),
                  InvalidInput);
}

TEST_CASE("convex options propagate to the certificate diagnostics") {
  ConvexOptions opts;
  opts.seed = 42;
  opts.directions = 2048;
  const auto res = convex_bound(test::unit_ball(2), CVec::Zero(2), opts);
  CHECK(res.certificate.diagnostics.at("seed").get<std::uint64_t>() == 42);
  CHECK(res.certificate.diagnostics.at("directions").get<std::size_t>() == 2048);
  CHECK(res.certificate.pipeline == "convex");
}
