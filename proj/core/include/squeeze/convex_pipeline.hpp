#ifndef SQUEEZE_CONVEX_PIPELINE_HPP
#define SQUEEZE_CONVEX_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "squeeze/certificate.hpp"
#include "squeeze/domain.hpp"
#include "squeeze/frame.hpp"
#include "squeeze/image_geometry.hpp"
#include "squeeze/maps.hpp"

namespace squeeze {

// Bound pipeline for general bounded convex domains: stretch along the
// contact frame, intersect with the supporting envelope, straighten by the
// triangular envelope matrix, map half-planes to discs coordinatewise, and
// scale the resulting polydisc into the unit ball.

/// affine normalization z -> diag(1/lambda) E^H (z - q); frame directions go
/// to the standard basis, contacts to the standard basis points
MapChain stretch_map(const Frame& frame);

/// rows of the triangular envelope matrix: unit row k is the pushforward of
/// the supporting hyperplane at the k-th contact, phase-normalized so the
/// diagonal entry is real positive.  Entries right of the diagonal must
/// vanish to 1e-6 (then are zeroed and the row re-normalized); the diagonal
/// must dominate every modulus in its row.  Violations throw
/// EnvelopeViolation.
CMat envelope_rows(const ConvexDomain& domain, const Frame& frame);

struct AcornReport {
  bool ok = false;
  std::size_t checked = 0;
  std::size_t failures = 0;
  CVec witness;  ///< first failing sample in stretched coordinates, if any
};

/// verifies that the stretched domain contains the convex hull of the unit
/// contact discs {sum_k |w_k| < 1}: gauge-projected boundary samples of the
/// hull, pulled back through the stretch map, must land inside the domain
AcornReport acorn_check(const ConvexDomain& domain, const Frame& frame,
                        std::size_t samples = 2000, std::uint64_t seed = 1);

/// full chain [stretch, envelope matrix, coordinatewise half-plane-to-disc,
/// scale 1/sqrt(n)]; injective and holomorphic on the domain, sends q to 0,
/// image inside the unit ball
MapChain build_convex_chain(const ConvexDomain& domain, const CVec& q,
                            std::uint64_t seed = 0);

struct ConvexOptions {
  std::uint64_t seed = 1;
  std::size_t directions = 0;      ///< 0: dimension-based default
  std::size_t acorn_samples = 2000;
  bool check_acorn = true;
  bool verify_outer = true;        ///< re-check image norms on boundary samples
  std::size_t outer_samples = 4096;
};

struct ConvexBound {
  BoundCertificate certificate;
  Frame frame;
  CMat envelope;
  RadiusEstimate inner;
  double delta_analytic = 0.0;  ///< dimension-only fallback radius 1/sqrt(n)
  AcornReport acorn;
};

ConvexBound convex_bound(const ConvexDomain& domain, const CVec& q,
                         const ConvexOptions& opts = {});

/// quasi-uniform interior points for squeezing-constant scans
std::vector<CVec> interior_samples(const ConvexDomain& domain,
                                   std::size_t count, std::uint64_t seed = 1);

struct ScanEntry {
  CVec point;
  double bound = 0.0;
  std::string error;  ///< nonempty when the pipeline failed at this point
};

struct ScanResult {
  double constant = 0.0;  ///< min certified bound over successful points
  std::size_t succeeded = 0;
  std::vector<ScanEntry> entries;
};

/// positive-squeezing-constant scan: runs the convex pipeline at each point,
/// records per-point failures instead of aborting; throws InvalidInput when
/// no point succeeds
ScanResult constant_scan(const ConvexDomain& domain,
                         const std::vector<CVec>& points,
                         const ConvexOptions& opts = {});

}  // namespace squeeze

#endif
