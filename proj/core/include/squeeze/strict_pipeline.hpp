#ifndef SQUEEZE_STRICT_PIPELINE_HPP
#define SQUEEZE_STRICT_PIPELINE_HPP

#include <cstdint>
#include <vector>

#include "squeeze/certificate.hpp"
#include "squeeze/domain.hpp"
#include "squeeze/image_geometry.hpp"
#include "squeeze/maps.hpp"

namespace squeeze {

// Bound pipeline for smooth strongly convex domains: center at the nearest
// boundary point, dilate anisotropically by the boundary distance, pass to
// the ball by the Cayley involution and straighten the limiting Hermitian
// form.  The image converges to the unit ball as the base point approaches
// the boundary, which drives the bound to 1.

/// principal curvatures of the boundary at a smooth boundary point
struct ShapeCurvatures {
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double gradient_norm = 0.0;  ///< defining-function gradient magnitude
};

ShapeCurvatures shape_curvatures(const ConvexDomain& domain, const CVec& b);

/// everything the strict chain needs about one base point
struct ContactData {
  CVec q;                     ///< interior base point
  CVec b;                     ///< unique nearest boundary point
  CVec nu;                    ///< outward unit normal at b
  double lambda_q = 0.0;      ///< |q - b|
  double gradient_norm = 0.0; ///< |grad rho(b)|
  CMat U;                     ///< centering unitary with U nu = -e1
  CMat H;                     ///< limiting Hermitian boundary form on z'
  double c0 = 0.0;            ///< smallest eigenvalue of H
  double R = 0.0;             ///< enclosing-sphere radius at b
};

struct StrictOptions {
  std::uint64_t seed = 1;
  std::size_t inner_directions = 0;   ///< 0: dimension default
  std::size_t outer_directions = 0;   ///< 0: dimension default
  std::size_t envelope_samples = 100000;
  std::size_t uniqueness_probes = 1000;
  double recenter_threshold = 1e-9;   ///< residual at q that triggers recentering
};

/// nearest boundary point: closed form for balls, Newton on the tangency
/// system for ellipsoids; probes reject ambiguous base points
CVec nearest_boundary(const ConvexDomain& domain, const CVec& q,
                      std::size_t probes = 1000, std::uint64_t seed = 1);

/// unitary completing the normal: first row -nu^H, remaining rows by
/// Gram-Schmidt over the standard basis with real-nonnegative diagonal phases
CMat centering_unitary(const CVec& nu);

/// limiting Hermitian form of the boundary graph at b in centered
/// coordinates: transported real Hessian over the gradient norm, restricted
/// to the tangent complex directions, Hermitian part
CMat hermitian_form_at(const ConvexDomain& domain, const CVec& b, const CMat& U);

/// smallest radius (with a 1e-6 relative cushion) of a sphere through b with
/// inward normal nu enclosing the domain; sample supremum of
/// |z-b|^2 / (2 Re<b-z, nu>) refined along the boundary, against the
/// curvature candidate 1/kappa_min at b
double envelope_radius(const ConvexDomain& domain, const CVec& b, const CVec& nu,
                       std::size_t samples = 100000, std::uint64_t seed = 1);

ContactData contact_data(const ConvexDomain& domain, const CVec& q,
                         const StrictOptions& opts = {});

/// centering alone: z -> U (z - b)
MapChain centering_chain(const ContactData& c);
/// centering followed by the anisotropic dilation by lambda_q
MapChain centered_stretch_chain(const ContactData& c);

/// full chain [centering, dilation, Cayley, Hermitian straightening], plus a
/// ball recentering atom when the image of q drifts beyond the threshold
MapChain build_strict_chain(const ConvexDomain& domain, const ContactData& c,
                            double recenter_threshold = 1e-9);

struct StrictBound {
  BoundCertificate certificate;
  ContactData contact;
  RadiusEstimate inner;   ///< of the unnormalized chain image
  RadiusEstimate outer;
  double bound = 0.0;     ///< inner.value / outer.value
};

StrictBound strict_bound(const ConvexDomain& domain, const CVec& q,
                         const StrictOptions& opts = {});

// ------------------------------------------------------------- limit scans //

struct LimitScanRow {
  double t = 0.0;         ///< distance parameter along the approach path
  double lambda_q = 0.0;
  double r_in = 0.0;
  double r_out = 0.0;
  double bound = 0.0;
};

struct LimitScanResult {
  CVec boundary_point;
  std::vector<LimitScanRow> rows;  ///< ordered by decreasing t
  double final_bound = 0.0;        ///< bound at the smallest t
};

struct LimitScanOptions {
  StrictOptions strict;
  CVec drift;                   ///< tangential drift direction; empty = none
  double drift_coeff = 0.0;
  double drift_exponent = 1.0;  ///< path q(t) = p - t nu + coeff t^exp tau
};

/// strict bounds along a path approaching the boundary point p; throws
/// PointExited when the path leaves the domain
LimitScanResult limit_scan(const ConvexDomain& domain, const CVec& p,
                           std::vector<double> ts,
                           const LimitScanOptions& opts = {});

// -------------------------------------------- auxiliary comparison domains //

enum class AuxKind {
  Halfspace,        ///< {Re z1 > 0}: supporting halfspace at the contact
  Siegel,           ///< {2 Re z1 > |z'|^2}: Cayley image of the unit ball
  OmegaHat,         ///< {2 Re z1 > H(z')}: dilation limit of the domain
  GDelta,           ///< {2 Re z1 + delta |Im z1| > (1-delta) H(z')}: outer cushion
  FDelta,           ///< {2 Re z1 - delta |Im z1| > (1+delta) H(z')}: inner cushion
  EnclosingSphere,  ///< {|z|^2 < 2 R Re z1}: centered enclosing sphere
};

/// closed-form membership for the comparison domains; all of them except the
/// sphere are invariant under the anisotropic dilation
struct AuxDomainSpec {
  AuxKind kind = AuxKind::Siegel;
  CMat H;             ///< used by OmegaHat / GDelta / FDelta
  double delta = 0.0;
  double R = 1.0;     ///< used by EnclosingSphere

  /// positive strictly inside, negative outside
  double margin(const CVec& w) const;
  bool contains(const CVec& w) const { return margin(w) > 0.0; }
};

struct AuxInclusionReport {
  std::size_t lower_checked = 0;   ///< inner-cushion points found inside
  std::size_t upper_checked = 0;   ///< domain points found inside the outer cushion
  std::size_t sphere_checked = 0;  ///< boundary points inside the sphere
  double worst_upper_margin = 0.0;
  double worst_sphere_margin = 0.0;
};

/// verifies, on quasi-random samples inside a ball of radius rho, the
/// sandwich  F_delta  subset  dilated centered domain  subset  G_delta,
/// and globally that the centered domain sits in its enclosing sphere;
/// throws InclusionViolated with a witness on failure
AuxInclusionReport aux_inclusion_check(const ConvexDomain& domain,
                                       const ContactData& c, double delta,
                                       double rho = 0.5,
                                       std::size_t samples = 10000,
                                       std::uint64_t seed = 1);

/// exact overshoot of the straightened outer cushion beyond the unit ball:
/// max |L(w)| - 1 over the Cayley image of G_delta is sqrt((1+delta/4)/(1-delta)) - 1
double epsilon_of_delta(double delta);

// identity residuals, zero in exact arithmetic; tests drive them over samples
double cayley_involution_residual(const CVec& z);
double cayley_siegel_identity_residual(const CVec& z);
/// transport identity between the halfspace-side cushion margin at kappa(w)
/// and its closed-form ball-side version at w (shrunk = inner cushion)
double cushion_transport_residual(const CMat& H, double delta, bool shrunk,
                                  const CVec& w);

}  // namespace squeeze

#endif
