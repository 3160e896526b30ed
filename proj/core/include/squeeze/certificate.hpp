#ifndef SQUEEZE_CERTIFICATE_HPP
#define SQUEEZE_CERTIFICATE_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "squeeze/domain.hpp"
#include "squeeze/maps.hpp"

namespace squeeze {

// Self-contained record of one certified squeezing bound: the domain, the
// base point, the normalized map chain (chain(point) = 0, image inside the
// unit ball), and the certified radii.  Serializes losslessly to JSON.
struct BoundCertificate {
  std::string pipeline;  ///< "convex" or "strict"
  ConvexDomain domain;
  CVec point;
  MapChain chain;
  double inner_radius = 0.0;  ///< certified inner radius of the normalized image
  double outer_radius = 1.0;  ///< outer radius before normalization
  double bound = 0.0;         ///< inner_radius; kept separate for readability
  nlohmann::json diagnostics = nlohmann::json::object();

  nlohmann::json to_json() const;
  static BoundCertificate from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static BoundCertificate load(const std::string& path);
};

struct ReplayOptions {
  std::size_t sphere_samples = 10000;
  std::size_t boundary_samples = 10000;
  std::uint64_t seed = 0xfeedULL;  ///< deliberately different from build seeds
};

struct ReplayReport {
  bool ok = false;
  std::string detail;  ///< first failure, empty when ok
  double base_point_residual = 0.0;
  double worst_interior_margin = 0.0;  ///< max image-ball excess over probes
  double worst_boundary_norm = 0.0;
  std::size_t interior_checked = 0;
  std::size_t boundary_checked = 0;
  bool boundary_skipped_unbounded = false;
};

/// independent re-verification of a certificate with fresh samples:
/// chain(point) = 0, the ball of radius bound*(1-1e-6) sits in the image,
/// and boundary samples map into the closed unit ball
ReplayReport replay(const BoundCertificate& cert, const ReplayOptions& opts = {});

}  // namespace squeeze

#endif
