#include "squeeze/certificate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "squeeze/errors.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/qmc.hpp"

namespace squeeze {

namespace {

/// replay probes sit strictly inside the certified ball by this factor
constexpr double kReplayShrink = 1.0 - 1e-6;
constexpr double kBasePointTol = 1e-11;
constexpr double kBoundaryNormTol = 1e-9;

nlohmann::json vec_to_json(const CVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back({v[i].real(), v[i].imag()});
  return a;
}

CVec vec_from_json(const nlohmann::json& a) {
  CVec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    v[Eigen::Index(i)] = cplx(a[i][0].get<double>(), a[i][1].get<double>());
  return v;
}

}  // namespace

nlohmann::json BoundCertificate::to_json() const {
  return {{"format", "squeeze-certificate-v1"},
          {"pipeline", pipeline},
          {"domain", domain.to_json()},
          {"point", vec_to_json(point)},
          {"chain", chain.to_json()},
          {"inner_radius", inner_radius},
          {"outer_radius", outer_radius},
          {"bound", bound},
          {"diagnostics", diagnostics}};
}

BoundCertificate BoundCertificate::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != std::string("squeeze-certificate-v1"))
    throw InvalidInput("unrecognized certificate format tag");
  try {
    BoundCertificate c{j.at("pipeline").get<std::string>(),
                       ConvexDomain::from_json(j.at("domain")),
                       vec_from_json(j.at("point")),
                       MapChain::from_json(j.at("chain")),
                       j.at("inner_radius").get<double>(),
                       j.at("outer_radius").get<double>(),
                       j.at("bound").get<double>(),
                       j.value("diagnostics", nlohmann::json::object())};
    if (!(c.bound > 0.0) || !(c.inner_radius > 0.0))
      throw InvalidInput("certificate radii must be positive");
    if (c.point.size() != c.domain.dim())
      throw InvalidInput("certificate point dimension mismatch");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed certificate payload: ") + e.what());
  }
}

void BoundCertificate::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open certificate file for writing: " + path);
  out << to_json().dump(2) << "\n";
}

BoundCertificate BoundCertificate::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open certificate file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("certificate parse error: ") + e.what());
  }
  return from_json(j);
}

ReplayReport replay(const BoundCertificate& cert, const ReplayOptions& opts) {
  ReplayReport rep;
  const int n = cert.domain.dim();

  const CVec at_base = cert.chain.apply(cert.point);
  rep.base_point_residual = at_base.norm();
  if (rep.base_point_residual > kBasePointTol) {
    std::ostringstream os;
    os << "chain does not vanish at the base point (|chain(q)| = "
       << rep.base_point_residual << ")";
    rep.detail = os.str();
    return rep;
  }

  // interior: every probe on the shrunk certified sphere must pull back
  // into the domain
  const double r = cert.bound * kReplayShrink;
  const auto dirs = qmc::sphere_directions(2 * n, opts.sphere_samples, opts.seed,
                                           qmc::mix64(0x1e91ull));
  std::vector<double> margins(dirs.size(), 0.0);
  std::vector<unsigned char> inside(dirs.size(), 0);
  parallel_for(dirs.size(), [&](std::size_t i) {
    const CVec w = r * to_complex(dirs[i]);
    inside[i] = membership_in_image(cert.chain, cert.domain, w) ? 1 : 0;
    margins[i] = r;
  });
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    ++rep.interior_checked;
    if (!inside[i]) {
      std::ostringstream os;
      os << "certified ball escapes the image at probe " << i
         << " (radius " << r << ")";
      rep.detail = os.str();
      rep.worst_interior_margin = margins[i];
      return rep;
    }
  }

  // boundary: fresh boundary samples must map into the closed unit ball
  if (cert.domain.bounded()) {
    const auto bpts = cert.domain.boundary_samples(opts.boundary_samples,
                                                   opts.seed, qmc::mix64(0xb41ull));
    std::vector<double> norms(bpts.size(), 0.0);
    std::vector<unsigned char> singular(bpts.size(), 0);
    parallel_for(bpts.size(), [&](std::size_t i) {
      try {
        norms[i] = cert.chain.apply(bpts[i]).norm();
      } catch (const SingularPoint&) {
        singular[i] = 1;
      }
    });
    for (std::size_t i = 0; i < bpts.size(); ++i) {
      ++rep.boundary_checked;
      if (singular[i]) {
        rep.detail = "chain singular at a boundary sample";
        return rep;
      }
      rep.worst_boundary_norm = std::max(rep.worst_boundary_norm, norms[i]);
    }
    if (rep.worst_boundary_norm > 1.0 + kBoundaryNormTol) {
      std::ostringstream os;
      os << "boundary sample leaves the unit ball (|chain(z)| = "
         << rep.worst_boundary_norm << ")";
      rep.detail = os.str();
      return rep;
    }
  } else {
    rep.boundary_skipped_unbounded = true;
  }

  rep.ok = true;
  return rep;
}

}  // namespace squeeze
