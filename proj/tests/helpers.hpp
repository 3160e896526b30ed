#ifndef SQUEEZE_TEST_HELPERS_HPP
#define SQUEEZE_TEST_HELPERS_HPP

#include <cmath>
#include <initializer_list>
#include <vector>

#include "squeeze/domain.hpp"
#include "squeeze/types.hpp"

namespace squeeze::test {

inline CVec cv(std::initializer_list<cplx> entries) {
  CVec z(Eigen::Index(entries.size()));
  Eigen::Index k = 0;
  for (const cplx& e : entries) z[k++] = e;
  return z;
}

inline RVec rv(std::initializer_list<double> entries) {
  RVec v(Eigen::Index(entries.size()));
  Eigen::Index k = 0;
  for (const double e : entries) v[k++] = e;
  return v;
}

inline ConvexDomain unit_ball(int n) {
  return ConvexDomain(Ball{CVec::Zero(n), 1.0}, CVec::Zero(n));
}

/// {|z1|^2 + |z2|^2/4 < 1}
inline ConvexDomain flat_ellipsoid() {
  CMat q = CMat::Zero(2, 2);
  q(0, 0) = 1.0;
  q(1, 1) = 0.25;
  return ConvexDomain(HermitianEllipsoid{CVec::Zero(2), q}, CVec::Zero(2));
}

/// dense positive definite Hermitian form, no axis symmetry
inline ConvexDomain skew_ellipsoid() {
  CMat q(2, 2);
  q(0, 0) = cplx(1.3, 0.0);
  q(0, 1) = cplx(0.25, 0.15);
  q(1, 0) = cplx(0.25, -0.15);
  q(1, 1) = cplx(0.6, 0.0);
  return ConvexDomain(HermitianEllipsoid{CVec::Zero(2), q}, CVec::Zero(2));
}

inline ConvexDomain bidisc() {
  return ConvexDomain(Polydisc{CVec::Zero(2), RVec::Ones(2)}, CVec::Zero(2));
}

/// {|x1|,|y1|,...,|xn|,|yn| < half} as a halfspace polytope; polytopes carry
/// no intrinsic bounding radius, so the circumradius is declared
inline ConvexDomain cube(int n, double half = 1.0) {
  HalfspacePolytope p;
  for (int k = 0; k < n; ++k)
    for (const cplx dir : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)}) {
      CVec normal = CVec::Zero(n);
      normal[k] = dir;
      p.faces.push_back(RealHyperplane{normal, half});
    }
  return ConvexDomain(std::move(p), CVec::Zero(n), half * std::sqrt(2.0 * n));
}

inline ConvexDomain real_ellipsoid() {
  return ConvexDomain(
      DiagonalRealEllipsoid{CVec::Zero(2), rv({1.0, 1.5}), rv({0.8, 1.2})},
      CVec::Zero(2));
}

}  // namespace squeeze::test

#endif
