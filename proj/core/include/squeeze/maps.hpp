#ifndef SQUEEZE_MAPS_HPP
#define SQUEEZE_MAPS_HPP

#include <optional>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "squeeze/domain.hpp"
#include "squeeze/types.hpp"

namespace squeeze {

// Injective holomorphic building blocks.  A chain applies them left to right;
// every atom has a closed-form inverse, so image membership is decided by
// exact pullback instead of forward sampling.

struct AffineAtom {
  CMat M;  // invertible, |det| > 1e-14
  CVec t;
};

/// z_k -> z_k / (2 c_k - z_k) per coordinate, c_k > 0; maps the halfplane
/// {Re z_k < c_k} into the unit disc, 0 -> 0; singular on {z_k = 2 c_k}
struct CoordMoebiusAtom {
  RVec centers;
};

/// kappa(z) = ((1-z1)/(1+z1), sqrt(2) z2/(1+z1), ..., sqrt(2) zn/(1+z1));
/// involution exchanging the unit ball and the Siegel halfspace
/// {2 Re z1 > |z'|^2}; singular on {z1 = -1}
struct CayleyAtom {
  int dim = 1;
};

/// anisotropic dilation (z1/lambda, z2/sqrt(lambda), ..., zn/sqrt(lambda))
struct StretchAtom {
  double lambda = 1.0;
};

struct ScaleAtom {
  double factor = 1.0;
};

/// involutive unit-ball automorphism phi_a with phi_a(a) = 0, phi_a(0) = a;
/// singular on {<z,a> = 1}; used only to recenter a chain that drifted
struct BallRecenterAtom {
  CVec a;
};

using MapAtom = std::variant<AffineAtom, CoordMoebiusAtom, CayleyAtom,
                             StretchAtom, ScaleAtom, BallRecenterAtom>;

CVec apply_atom(const MapAtom& atom, const CVec& z);
CVec invert_atom(const MapAtom& atom, const CVec& w);
/// crude multiplicative conditioning score (exact for affine atoms)
double atom_condition(const MapAtom& atom);

class MapChain {
 public:
  MapChain() = default;
  explicit MapChain(std::vector<MapAtom> atoms);

  const std::vector<MapAtom>& atoms() const { return atoms_; }
  void push_back(MapAtom atom);
  std::size_t size() const { return atoms_.size(); }

  /// cached product of atom condition scores
  double condition() const { return condition_; }

  /// left-to-right application; throws SingularPoint (with the atom index
  /// in the message) when an atom denominator falls below 1e-12
  CVec apply(const CVec& z) const;

  /// right-to-left closed-form inversion
  CVec invert(const CVec& w) const;

  /// apply that also reports the smallest denominator met along the chain,
  /// for singular-set clearance checks on domain closures
  CVec apply_tracked(const CVec& z, double& min_denominator) const;

  nlohmann::json to_json() const;
  static MapChain from_json(const nlohmann::json& j);

 private:
  std::vector<MapAtom> atoms_;
  double condition_ = 1.0;
};

/// image of {Re<z,a> = b} under the affine map z -> Mz + t
RealHyperplane pushforward_hyperplane(const CMat& M, const CVec& t,
                                      const RealHyperplane& plane);

/// exact test for w in chain(domain): invert, then domain membership.
/// A singular pullback counts as "outside"; the flag reports it.
bool membership_in_image(const MapChain& chain, const ConvexDomain& domain,
                         const CVec& w, bool* hit_singular = nullptr);

}  // namespace squeeze

#endif
