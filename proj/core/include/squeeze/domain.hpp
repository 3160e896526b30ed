#ifndef SQUEEZE_DOMAIN_HPP
#define SQUEEZE_DOMAIN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "squeeze/types.hpp"

namespace squeeze {

/// real hyperplane {z : Re<z,a> = b} with unit complex normal a;
/// the associated open halfspace is Re<z,a> < b
struct RealHyperplane {
  CVec normal;
  double offset = 0.0;

  /// signed distance of z to the hyperplane (positive on the outer side)
  double violation(const CVec& z) const;
};

struct SupportingPlane {
  RealHyperplane plane;
  bool ambiguous = false;  // vertex/edge contact resolved by lowest-index tie-break
};

/// real gradient and Hessian of the canonical defining function,
/// interleaved coordinates (x1,y1,...,xn,yn)
struct BoundaryJet {
  RVec gradient;
  RMat hessian;
};

struct RayExit {
  double t = 0.0;    // +infinity when the ray never leaves
  RVec gradient;     // d t / d w (real, interleaved), for the active branch
};

class ConvexDomain;

struct Ball {
  CVec center;
  double radius = 1.0;
};

/// {z : (z-c)^H Q (z-c) < 1}, Q Hermitian positive definite
struct HermitianEllipsoid {
  CVec center;
  CMat form;
};

/// {z : sum (x_k-cx_k)^2/ax_k^2 + (y_k-cy_k)^2/ay_k^2 < 1}
struct DiagonalRealEllipsoid {
  CVec center;
  RVec re_axes;
  RVec im_axes;
};

struct HalfspacePolytope {
  std::vector<RealHyperplane> faces;
};

struct Polydisc {
  CVec center;
  RVec radii;
};

struct Intersection {
  std::vector<ConvexDomain> members;
};

using DomainKind = std::variant<Ball, HermitianEllipsoid, DiagonalRealEllipsoid,
                                HalfspacePolytope, Polydisc, Intersection>;

// Bounded (or hyperbolic unbounded) convex domain with closed-form membership,
// ray exits, supporting hyperplanes and boundary sampling.  All oracles are
// exact up to machine precision; nothing downstream ever linearizes the
// boundary itself.
class ConvexDomain {
 public:
  /// placeholder (unit disc) so deserialization targets are default-constructible
  ConvexDomain();
  ConvexDomain(DomainKind kind, CVec witness,
               std::optional<double> declared_bounding_radius = std::nullopt);

  int dim() const { return int(witness_.size()); }
  const DomainKind& kind() const { return kind_; }
  const CVec& witness() const { return witness_; }

  bool bounded() const { return bounding_radius_.has_value(); }
  /// radius of a centered ball containing the domain; throws if unbounded
  double bounding_radius() const;
  /// O(1) length scale used to set absolute tolerances
  double scale() const;
  /// absolute tolerance for "lies on the boundary"
  double boundary_tol() const;

  bool smooth() const;  // true for ball and both ellipsoid kinds

  /// strict interior membership
  bool contains(const CVec& z) const;

  /// approximate signed boundary distance, negative inside
  double boundary_residual(const CVec& z) const;

  /// sup{t > 0 : q + t w inside}, closed form; +infinity when unbounded
  double ray_exit(const CVec& q, const CVec& w) const;

  /// ray exit together with its derivative in w (active branch)
  RayExit ray_exit_grad(const CVec& q, const CVec& w) const;

  /// outward unit-normal supporting hyperplane at a boundary point
  SupportingPlane supporting_hyperplane_at(const CVec& zstar) const;

  /// quasi-uniform boundary points, radial projection from the witness point
  std::vector<CVec> boundary_samples(std::size_t count, std::uint64_t seed,
                                     std::uint64_t stream = 0) const;

  /// defining-function gradient and Hessian at a boundary point (smooth kinds)
  BoundaryJet boundary_hessian(const CVec& zstar) const;

  nlohmann::json to_json() const;
  static ConvexDomain from_json(const nlohmann::json& j);
  static ConvexDomain load(const std::string& path);

 private:
  DomainKind kind_;
  CVec witness_;
  std::optional<double> bounding_radius_;

  void validate() const;
};

}  // namespace squeeze

#endif
