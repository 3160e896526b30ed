#ifndef SQUEEZE_IMAGE_GEOMETRY_HPP
#define SQUEEZE_IMAGE_GEOMETRY_HPP

#include <cstdint>

#include "squeeze/domain.hpp"
#include "squeeze/maps.hpp"
#include "squeeze/types.hpp"

namespace squeeze {

// Certified radius estimates for chain images.  Inner radii come from exact
// per-direction membership (pullback through the closed-form inverse), never
// from forward sampling; outer radii ride on the maximum principle, so
// boundary samples suffice.

struct RadiusEstimate {
  double value = 0.0;          // certified value (margin already applied)
  double raw = 0.0;            // refined extremum before the margin
  std::size_t direction_count = 0;
  double tolerance = 0.0;      // reported directional slack
  CVec worst_direction;        // unit direction attaining the extremum
};

struct RadiusOptions {
  std::size_t directions = 0;   // 0: 1024 (n=1), 4096 (n=2), 65536 (n>=3)
  std::uint64_t seed = 1;
};

/// largest certified r with the centered ball of radius r inside chain(domain):
/// per-direction first-exit radii on a low-discrepancy direction set, local
/// minimization of the radial profile, then a deterministic shrink by
/// (1 - gap^2/4) so the claim survives re-sampling under fresh seeds
RadiusEstimate inner_radius(const MapChain& chain, const ConvexDomain& domain,
                            const RadiusOptions& opts = {});

/// smallest certified r with chain(domain) inside the centered ball of
/// radius r: boundary-sample maximum of ||chain||, local refinement, then
/// inflation by the measured local Lipschitz rate times the sample gap
RadiusEstimate outer_radius(const MapChain& chain, const ConvexDomain& domain,
                            const RadiusOptions& opts = {});

struct SelfcheckReport {
  double max_roundtrip = 0.0;        // against 1e-9 * chain condition
  double max_cauchy_riemann = 0.0;   // against 1e-6
  std::size_t points = 0;
  bool ok = false;
};

/// inverse round-trips on interior samples plus a central-difference
/// Cauchy-Riemann residual for every atom
SelfcheckReport chain_selfcheck(const MapChain& chain, const ConvexDomain& domain,
                                std::size_t points_per_atom = 100,
                                std::uint64_t seed = 1);

}  // namespace squeeze

#endif
