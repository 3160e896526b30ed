#ifndef SQUEEZE_FRAME_HPP
#define SQUEEZE_FRAME_HPP

#include <cstdint>
#include <vector>

#include "squeeze/domain.hpp"
#include "squeeze/types.hpp"

namespace squeeze {

// Orthonormal boundary-contact frame at an interior point: e^1 realizes the
// smallest slice radius over all of C^n, e^2 the smallest over the orthogonal
// complement of e^1, and so on.  Radii are nondecreasing by construction
// (minima over nested direction sets).

struct Frame {
  CVec q;
  CMat vectors;                 // columns e^1..e^n
  RVec radii;                   // lambda^1 <= ... <= lambda^n
  std::vector<CVec> contacts;   // q + lambda^k e^k, on the boundary
};

struct SliceRadius {
  double lambda = 0.0;
  CVec direction;  // ambient unit vector realizing the minimum
  CVec contact;
};

/// largest r with the complex slice ball {q + v : v in span(V), |v| < r}
/// inside the domain, plus a direction attaining it.  V must have
/// orthonormal columns.  Closed form for polytopes; multi-start descent
/// (64 * dim_R starts + basis directions) otherwise.  Near-ties within 1e-8
/// resolve to the lexicographically greatest phase-normalized direction.
SliceRadius slice_radius(const ConvexDomain& domain, const CVec& q,
                         const CMat& V, std::uint64_t seed = 0);

Frame build_frame(const ConvexDomain& domain, const CVec& q,
                  std::uint64_t seed = 0);

}  // namespace squeeze

#endif
