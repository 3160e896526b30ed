#include "squeeze/maps.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "squeeze/errors.hpp"

namespace squeeze {

namespace {

constexpr double kDenomFloor = 1e-12;

CVec affine_apply(const AffineAtom& a, const CVec& z) { return a.M * z + a.t; }

CVec cayley_apply(const CayleyAtom& a, const CVec& z, int atom_index) {
  const cplx denom = 1.0 + z[0];
  if (std::abs(denom) <= kDenomFloor)
    throw SingularPoint("atom " + std::to_string(atom_index) +
                        " (cayley) hit z1 = -1");
  CVec w(a.dim);
  w[0] = (1.0 - z[0]) / denom;
  const double s = std::sqrt(2.0);
  for (int k = 1; k < a.dim; ++k) w[k] = s * z[k] / denom;
  return w;
}

CVec recenter_apply(const BallRecenterAtom& a, const CVec& z, int atom_index) {
  const double na2 = std::real(hdot(a.a, a.a));
  if (na2 < 1e-30) return -z;
  const cplx denom = 1.0 - hdot(z, a.a);
  if (std::abs(denom) <= kDenomFloor)
    throw SingularPoint("atom " + std::to_string(atom_index) +
                        " (recenter) hit <z,a> = 1");
  const CVec pz = (hdot(z, a.a) / na2) * a.a;
  const double s = std::sqrt(std::max(0.0, 1.0 - na2));
  return (a.a - pz - s * (z - pz)) / denom;
}

}  // namespace

CVec apply_atom(const MapAtom& atom, const CVec& z) {
  return std::visit(
      [&](const auto& a) -> CVec {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AffineAtom>) {
          return affine_apply(a, z);
        } else if constexpr (std::is_same_v<T, CoordMoebiusAtom>) {
          CVec w(z.size());
          for (Eigen::Index k = 0; k < z.size(); ++k) {
            const cplx denom = 2.0 * a.centers[k] - z[k];
            if (std::abs(denom) <= kDenomFloor)
              throw SingularPoint("coordinate moebius hit z_k = 2 c_k");
            w[k] = z[k] / denom;
          }
          return w;
        } else if constexpr (std::is_same_v<T, CayleyAtom>) {
          return cayley_apply(a, z, -1);
        } else if constexpr (std::is_same_v<T, StretchAtom>) {
          CVec w = z / std::sqrt(a.lambda);
          w[0] = z[0] / a.lambda;
          return w;
        } else if constexpr (std::is_same_v<T, ScaleAtom>) {
          return a.factor * z;
        } else {
          return recenter_apply(a, z, -1);
        }
      },
      atom);
}

CVec invert_atom(const MapAtom& atom, const CVec& w) {
  return std::visit(
      [&](const auto& a) -> CVec {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AffineAtom>) {
          return a.M.fullPivLu().solve(w - a.t);
        } else if constexpr (std::is_same_v<T, CoordMoebiusAtom>) {
          CVec z(w.size());
          for (Eigen::Index k = 0; k < w.size(); ++k) {
            const cplx denom = 1.0 + w[k];
            if (std::abs(denom) <= kDenomFloor)
              throw SingularPoint("coordinate moebius inverse hit w_k = -1");
            z[k] = 2.0 * a.centers[k] * w[k] / denom;
          }
          return z;
        } else if constexpr (std::is_same_v<T, CayleyAtom>) {
          return cayley_apply(a, w, -1);  // involution
        } else if constexpr (std::is_same_v<T, StretchAtom>) {
          CVec z = w * std::sqrt(a.lambda);
          z[0] = w[0] * a.lambda;
          return z;
        } else if constexpr (std::is_same_v<T, ScaleAtom>) {
          return w / a.factor;
        } else {
          return recenter_apply(a, w, -1);  // involution
        }
      },
      atom);
}

double atom_condition(const MapAtom& atom) {
  return std::visit(
      [&](const auto& a) -> double {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AffineAtom>) {
          Eigen::JacobiSVD<CMat> svd(a.M);
          const double smin = svd.singularValues().minCoeff();
          return smin > 0 ? svd.singularValues().maxCoeff() / smin : 1e300;
        } else if constexpr (std::is_same_v<T, StretchAtom>) {
          const double r = std::sqrt(a.lambda);
          return std::max(r, 1.0 / r);
        } else if constexpr (std::is_same_v<T, BallRecenterAtom>) {
          const double na = a.a.norm();
          return na < 1.0 ? (1.0 + na) / (1.0 - na) : 1e300;
        } else {
          return 1.0;
        }
      },
      atom);
}

MapChain::MapChain(std::vector<MapAtom> atoms) {
  for (auto& a : atoms) push_back(std::move(a));
}

void MapChain::push_back(MapAtom atom) {
  if (const auto* aff = std::get_if<AffineAtom>(&atom)) {
    const double adet = std::abs(aff->M.determinant());
    if (!(adet > 1e-14))
      throw SingularAffine("affine atom determinant below 1e-14");
  }
  if (const auto* sc = std::get_if<ScaleAtom>(&atom)) {
    if (sc->factor == 0.0) throw SingularAffine("zero scale factor");
  }
  if (const auto* st = std::get_if<StretchAtom>(&atom)) {
    if (!(st->lambda > 0.0)) throw SingularAffine("stretch needs lambda > 0");
  }
  if (const auto* mo = std::get_if<CoordMoebiusAtom>(&atom)) {
    if (mo->centers.size() == 0 || mo->centers.minCoeff() <= 0.0)
      throw InvalidInput("moebius centers must be positive");
  }
  if (const auto* rc = std::get_if<BallRecenterAtom>(&atom)) {
    if (!(rc->a.norm() < 1.0))
      throw InvalidInput("recenter point must lie in the open unit ball");
  }
  condition_ *= atom_condition(atom);
  atoms_.push_back(std::move(atom));
}

CVec MapChain::apply(const CVec& z) const {
  CVec w = z;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    try {
      w = apply_atom(atoms_[i], w);
    } catch (const SingularPoint&) {
      throw SingularPoint("atom " + std::to_string(i) + " singular on apply");
    }
  }
  return w;
}

CVec MapChain::invert(const CVec& w) const {
  CVec z = w;
  for (std::size_t i = atoms_.size(); i-- > 0;) {
    try {
      z = invert_atom(atoms_[i], z);
    } catch (const SingularPoint&) {
      throw SingularPoint("atom " + std::to_string(i) + " singular on invert");
    }
  }
  return z;
}

CVec MapChain::apply_tracked(const CVec& z, double& min_denominator) const {
  min_denominator = std::numeric_limits<double>::infinity();
  CVec w = z;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, CoordMoebiusAtom>) {
            for (Eigen::Index k = 0; k < w.size(); ++k)
              min_denominator = std::min(min_denominator,
                                         std::abs(2.0 * a.centers[k] - w[k]));
          } else if constexpr (std::is_same_v<T, CayleyAtom>) {
            min_denominator = std::min(min_denominator, std::abs(1.0 + w[0]));
          } else if constexpr (std::is_same_v<T, BallRecenterAtom>) {
            min_denominator =
                std::min(min_denominator, std::abs(1.0 - hdot(w, a.a)));
          }
        },
        atoms_[i]);
    try {
      w = apply_atom(atoms_[i], w);
    } catch (const SingularPoint&) {
      min_denominator = 0.0;
      throw SingularPoint("atom " + std::to_string(i) + " singular on apply");
    }
  }
  return w;
}

RealHyperplane pushforward_hyperplane(const CMat& M, const CVec& t,
                                      const RealHyperplane& plane) {
  const CVec a0 = CMat(M.adjoint()).fullPivLu().solve(plane.normal);
  const double na = a0.norm();
  if (na < 1e-14) throw SingularAffine("pushforward normal collapsed");
  RealHyperplane out;
  out.normal = a0 / na;
  out.offset = (plane.offset + std::real(hdot(t, a0))) / na;
  return out;
}

bool membership_in_image(const MapChain& chain, const ConvexDomain& domain,
                         const CVec& w, bool* hit_singular) {
  if (hit_singular) *hit_singular = false;
  try {
    return domain.contains(chain.invert(w));
  } catch (const SingularPoint&) {
    if (hit_singular) *hit_singular = true;
    return false;
  }
}

// ---------------------------------------------------------------- JSON I/O //

namespace {

using nlohmann::json;

json cvec_to_json(const CVec& z) {
  json a = json::array();
  for (Eigen::Index k = 0; k < z.size(); ++k)
    a.push_back(json::array({z[k].real(), z[k].imag()}));
  return a;
}

CVec cvec_from_json(const json& a) {
  CVec z(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    z[k] = cplx(a[k][0].get<double>(), a[k][1].get<double>());
  return z;
}

}  // namespace

nlohmann::json MapChain::to_json() const {
  json atoms = json::array();
  for (const auto& atom : atoms_) {
    json aj;
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, AffineAtom>) {
            aj["type"] = "affine";
            json rows = json::array();
            for (Eigen::Index i = 0; i < a.M.rows(); ++i)
              rows.push_back(cvec_to_json(a.M.row(i)));
            aj["matrix"] = rows;
            aj["translation"] = cvec_to_json(a.t);
          } else if constexpr (std::is_same_v<T, CoordMoebiusAtom>) {
            aj["type"] = "coord_moebius";
            json c = json::array();
            for (Eigen::Index k = 0; k < a.centers.size(); ++k)
              c.push_back(a.centers[k]);
            aj["centers"] = c;
          } else if constexpr (std::is_same_v<T, CayleyAtom>) {
            aj["type"] = "cayley";
            aj["dim"] = a.dim;
          } else if constexpr (std::is_same_v<T, StretchAtom>) {
            aj["type"] = "stretch";
            aj["lambda"] = a.lambda;
          } else if constexpr (std::is_same_v<T, ScaleAtom>) {
            aj["type"] = "scale";
            aj["factor"] = a.factor;
          } else {
            aj["type"] = "ball_recenter";
            aj["a"] = cvec_to_json(a.a);
          }
        },
        atom);
    atoms.push_back(aj);
  }
  return json{{"atoms", atoms}};
}

MapChain MapChain::from_json(const nlohmann::json& j) {
  MapChain chain;
  for (const auto& aj : j.at("atoms")) {
    const std::string type = aj.at("type").get<std::string>();
    if (type == "affine") {
      AffineAtom a;
      const auto& rows = aj.at("matrix");
      a.M = CMat(rows.size(), rows.empty() ? 0 : rows[0].size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        a.M.row(i) = cvec_from_json(rows[i]);
      a.t = cvec_from_json(aj.at("translation"));
      chain.push_back(std::move(a));
    } else if (type == "coord_moebius") {
      CoordMoebiusAtom a;
      const auto& c = aj.at("centers");
      a.centers = RVec(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) a.centers[k] = c[k].get<double>();
      chain.push_back(std::move(a));
    } else if (type == "cayley") {
      chain.push_back(CayleyAtom{aj.at("dim").get<int>()});
    } else if (type == "stretch") {
      chain.push_back(StretchAtom{aj.at("lambda").get<double>()});
    } else if (type == "scale") {
      chain.push_back(ScaleAtom{aj.at("factor").get<double>()});
    } else if (type == "ball_recenter") {
      chain.push_back(BallRecenterAtom{cvec_from_json(aj.at("a"))});
    } else {
      throw InvalidInput("unknown atom type '" + type + "'");
    }
  }
  return chain;
}

}  // namespace squeeze
