#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/image_geometry.hpp"
#include "squeeze/maps.hpp"

using namespace squeeze;
using test::cv;
using test::rv;

namespace {

MapChain identity_chain(int n) {
  MapChain chain;
  chain.push_back(AffineAtom{CMat::Identity(n, n), CVec::Zero(n)});
  return chain;
}

MapChain diag_chain(double a, double b) {
  MapChain chain;
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  chain.push_back(AffineAtom{m, CVec::Zero(2)});
  return chain;
}

}  // namespace

TEST_CASE("identity image of the ball has matching inner and outer radii") {
  const auto ball = test::unit_ball(2);
  const auto chain = identity_chain(2);
  const auto in = inner_radius(chain, ball);
  const auto out = outer_radius(chain, ball);
  CHECK(in.value <= 1.0);
  CHECK(out.value >= 1.0);
  CHECK(std::abs(in.value - 1.0) < 1e-6);
  CHECK(std::abs(out.value - 1.0) < 1e-6);
  CHECK(std::abs(in.raw - 1.0) < 1e-9);
  CHECK(std::abs(out.raw - 1.0) < 1e-9);
}

TEST_CASE("rescaled unitary image of the ball stays exactly round") {
  const auto ball = test::unit_ball(2);
  MapChain chain;
  CMat u(2, 2);
  const double c = std::cos(0.4), s = std::sin(0.4);
  u << cplx(c, 0.0), cplx(-s, 0.0), cplx(s, 0.0), cplx(c, 0.0);
  chain.push_back(AffineAtom{CMat(0.7 * u), CVec::Zero(2)});
  const auto in = inner_radius(chain, ball);
  const auto out = outer_radius(chain, ball);
  CHECK(std::abs(in.value - 0.7) < 1e-6);
  CHECK(std::abs(out.value - 0.7) < 1e-6);
}

TEST_CASE("anisotropic image: inner hits the short axis, outer the long one") {
  const auto ball = test::unit_ball(2);
  const auto chain = diag_chain(0.5, 1.0);
  const auto in = inner_radius(chain, ball);
  const auto out = outer_radius(chain, ball);
  CHECK(in.value <= 0.5 + 1e-9);
  CHECK(in.value == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(out.value >= 1.0 - 1e-9);
  CHECK(out.value == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(in.value <= out.value + 1e-9);
  // worst directions align with the axes
  CHECK(std::abs(in.worst_direction[1]) < 1e-2);
  CHECK(std::abs(out.worst_direction[0]) < 1e-2);
}

TEST_CASE("certified inner value survives re-sampling with other seeds") {
  const auto ball = test::unit_ball(2);
  const auto chain = diag_chain(0.6, 0.9);
  const auto base = inner_radius(chain, ball);
  for (const std::uint64_t seed : {2ull, 3ull, 17ull}) {
    RadiusOptions opts;
    opts.seed = seed;
    const auto probe = inner_radius(chain, ball, opts);
    // certified value is a true lower bound for every re-measurement
    CHECK(base.value <= probe.raw + 1e-9);
    CHECK(probe.value <= base.raw + 1e-9);
  }
}

TEST_CASE("doubling the direction count only sharpens the estimate") {
  const auto ball = test::unit_ball(2);
  const auto chain = diag_chain(0.5, 1.0);
  RadiusOptions coarse, fine;
  coarse.directions = 2048;
  fine.directions = 8192;
  const auto lo = inner_radius(chain, ball, coarse);
  const auto hi = inner_radius(chain, ball, fine);
  CHECK(lo.value <= hi.raw + 1e-9);
  CHECK(hi.value + hi.tolerance >= lo.value);
  CHECK(hi.tolerance < lo.tolerance + 1e-12);
}

TEST_CASE("inner radius demands the origin inside the image") {
  const auto ball = test::unit_ball(2);
  MapChain shifted;
  shifted.push_back(
      AffineAtom{CMat::Identity(2, 2), cv({{3.0, 0.0}, {0.0, 0.0}})});
  CHECK_THROWS_AS(inner_radius(shifted, ball), ZeroNotInImage);
}

TEST_CASE("outer radius flags singularities on the closure") {
  // moebius pole at z1 = 2 sits on the closure of the doubled bidisc
  const auto big = ConvexDomain(Polydisc{CVec::Zero(2), rv({2.0, 1.0})},
                                CVec::Zero(2));
  MapChain chain;
  chain.push_back(CoordMoebiusAtom{rv({1.0, 1.0})});
  CHECK_THROWS_AS(outer_radius(chain, big), SingularOnClosure);
}

TEST_CASE("radius reports carry consistent metadata") {
  const auto ball = test::unit_ball(2);
  const auto chain = diag_chain(0.8, 0.9);
  const auto in = inner_radius(chain, ball);
  CHECK(in.direction_count >= 1024);
  CHECK(in.tolerance > 0.0);
  CHECK(in.raw >= in.value);
  CHECK(std::abs(in.worst_direction.norm() - 1.0) < 1e-9);
}

TEST_CASE("selfcheck passes on a healthy composite chain") {
  const auto dom = test::flat_ellipsoid();
  // keep the pre-Cayley image inside {Re z1 > 2}, far from the pole at -1
  MapChain chain;
  CMat m(2, 2);
  m << cplx(0.27, 0.03), cplx(0.015, 0.0), cplx(0.0, -0.03), cplx(0.15, 0.0);
  chain.push_back(AffineAtom{m, cv({{1.5, 0.0}, {0.0, 0.01}})});
  chain.push_back(StretchAtom{0.5});
  chain.push_back(CayleyAtom{2});
  const auto report = chain_selfcheck(chain, dom);
  CHECK(report.ok);
  CHECK(report.points > 0);
  CHECK(report.max_roundtrip < 1e-9 * chain.condition());
  CHECK(report.max_cauchy_riemann < 1e-6);
}
