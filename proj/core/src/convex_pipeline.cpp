#include "squeeze/convex_pipeline.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <variant>

#include "squeeze/errors.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/qmc.hpp"

namespace squeeze {

namespace {

/// structural tolerances of the envelope construction; violations mean the
/// frame contacts do not carry the predicted supporting geometry
constexpr double kEnvelopeTol = 1e-6;
constexpr double kDominanceTol = 1e-8;
constexpr double kAcornShrink = 1.0 - 1e-7;
constexpr double kImageNormTol = 1e-9;

}  // namespace

MapChain stretch_map(const Frame& frame) {
  const int n = int(frame.q.size());
  CMat M(n, n);
  for (int k = 0; k < n; ++k)
    M.row(k) = frame.vectors.col(k).adjoint() / frame.radii[k];
  MapChain chain;
  chain.push_back(AffineAtom{M, CVec(-M * frame.q)});
  return chain;
}

CMat envelope_rows(const ConvexDomain& domain, const Frame& frame) {
  const int n = int(frame.q.size());
  const MapChain stretch = stretch_map(frame);
  const auto& aff = std::get<AffineAtom>(stretch.atoms()[0]);

  CMat rows = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const SupportingPlane sp = domain.supporting_hyperplane_at(frame.contacts[k]);
    const RealHyperplane pushed = pushforward_hyperplane(aff.M, aff.t, sp.plane);

    // functional coefficients: Re <w, a> = Re sum_i w_i conj(a_i)
    CVec row = pushed.normal.conjugate();

    // the contact maps to the k-th basis point, so the offset must match the
    // real part of the diagonal entry
    if (std::abs(pushed.offset - row[k].real()) > kEnvelopeTol) {
      std::ostringstream os;
      os << "contact " << k + 1 << " is off its pushforward plane by "
         << std::abs(pushed.offset - row[k].real());
      throw EnvelopeViolation(os.str());
    }
    if (std::abs(row[k].imag()) > kEnvelopeTol || row[k].real() <= 0.0) {
      std::ostringstream os;
      os << "diagonal entry " << k + 1 << " not real positive: (" << row[k].real()
         << ", " << row[k].imag() << ")";
      throw EnvelopeViolation(os.str());
    }
    row *= std::abs(row[k]) / row[k];  // snap the diagonal phase to zero
    row[k] = cplx(std::abs(row[k]), 0.0);

    for (int l = k + 1; l < n; ++l) {
      if (std::abs(row[l]) > kEnvelopeTol) {
        std::ostringstream os;
        os << "row " << k + 1 << " has entry " << std::abs(row[l])
           << " right of the diagonal";
        throw EnvelopeViolation(os.str());
      }
      row[l] = 0.0;
    }
    row /= row.norm();

    double max_mod = 0.0;
    for (int l = 0; l < n; ++l) max_mod = std::max(max_mod, std::abs(row[l]));
    if (row[k].real() < max_mod - kDominanceTol) {
      std::ostringstream os;
      os << "row " << k + 1 << " diagonal " << row[k].real()
         << " dominated by off-diagonal " << max_mod;
      throw EnvelopeViolation(os.str());
    }
    rows.row(k) = row.transpose();
  }
  return rows;
}

AcornReport acorn_check(const ConvexDomain& domain, const Frame& frame,
                        std::size_t samples, std::uint64_t seed) {
  const int n = int(frame.q.size());
  const MapChain stretch = stretch_map(frame);
  const auto dirs =
      qmc::sphere_directions(2 * n, samples, seed, qmc::mix64(0xac04ull));

  AcornReport rep;
  rep.checked = dirs.size();
  std::vector<unsigned char> inside(dirs.size(), 0);
  parallel_for(dirs.size(), [&](std::size_t i) {
    const CVec u = to_complex(dirs[i]);
    double gauge = 0.0;
    for (int k = 0; k < n; ++k) gauge += std::abs(u[k]);
    const CVec w = (kAcornShrink / gauge) * u;
    inside[i] = membership_in_image(stretch, domain, w) ? 1 : 0;
  });
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (inside[i]) continue;
    if (rep.failures == 0) {
      const CVec u = to_complex(dirs[i]);
      double gauge = 0.0;
      for (int k = 0; k < n; ++k) gauge += std::abs(u[k]);
      rep.witness = (kAcornShrink / gauge) * u;
    }
    ++rep.failures;
  }
  rep.ok = rep.failures == 0;
  return rep;
}

MapChain build_convex_chain(const ConvexDomain& domain, const CVec& q,
                            std::uint64_t seed) {
  const Frame frame = build_frame(domain, q, seed);
  const CMat rows = envelope_rows(domain, frame);
  const int n = domain.dim();

  RVec centers(n);
  for (int k = 0; k < n; ++k) centers[k] = rows(k, k).real();

  MapChain chain = stretch_map(frame);
  chain.push_back(AffineAtom{rows, CVec::Zero(n)});
  chain.push_back(CoordMoebiusAtom{centers});
  chain.push_back(ScaleAtom{1.0 / std::sqrt(double(n))});
  return chain;
}

ConvexBound convex_bound(const ConvexDomain& domain, const CVec& q,
                         const ConvexOptions& opts) {
  const int n = domain.dim();
  ConvexBound out;
  out.frame = build_frame(domain, q, opts.seed);
  out.envelope = envelope_rows(domain, out.frame);
  out.delta_analytic = 1.0 / std::sqrt(double(n));

  RVec centers(n);
  for (int k = 0; k < n; ++k) centers[k] = out.envelope(k, k).real();
  MapChain chain = stretch_map(out.frame);
  chain.push_back(AffineAtom{out.envelope, CVec::Zero(n)});
  chain.push_back(CoordMoebiusAtom{centers});
  chain.push_back(ScaleAtom{1.0 / std::sqrt(double(n))});

  if (opts.check_acorn) {
    out.acorn = acorn_check(domain, out.frame, opts.acorn_samples, opts.seed);
    if (!out.acorn.ok) {
      std::ostringstream os;
      os << "contact-disc hull escapes the stretched domain at "
         << out.acorn.failures << " of " << out.acorn.checked << " samples";
      throw EnvelopeViolation(os.str());
    }
  }

  double outer_max = 0.0;
  if (opts.verify_outer && domain.bounded()) {
    const auto bpts =
        domain.boundary_samples(opts.outer_samples, opts.seed, qmc::mix64(0x0eeull));
    std::vector<double> norms(bpts.size(), 0.0);
    parallel_for(bpts.size(), [&](std::size_t i) {
      norms[i] = chain.apply(bpts[i]).norm();
    });
    for (const double v : norms) outer_max = std::max(outer_max, v);
    if (outer_max > 1.0 + kImageNormTol) {
      std::ostringstream os;
      os << "image norm " << outer_max << " exceeds 1 on a boundary sample";
      throw EnvelopeViolation(os.str());
    }
  }

  RadiusOptions ropts;
  ropts.directions = opts.directions;
  ropts.seed = opts.seed;
  out.inner = inner_radius(chain, domain, ropts);

  BoundCertificate cert;
  cert.pipeline = "convex";
  cert.domain = domain;
  cert.point = q;
  cert.chain = chain;
  cert.inner_radius = out.inner.value;
  cert.outer_radius = 1.0;
  cert.bound = out.inner.value;
  cert.diagnostics = {
      {"slice_radii", std::vector<double>(out.frame.radii.data(),
                                          out.frame.radii.data() + n)},
      {"envelope_diagonal",
       std::vector<double>(centers.data(), centers.data() + n)},
      {"inner_raw", out.inner.raw},
      {"inner_tolerance", out.inner.tolerance},
      {"directions", out.inner.direction_count},
      {"outer_sample_max", outer_max},
      {"acorn_checked", out.acorn.checked},
      {"delta_analytic", out.delta_analytic},
      {"chain_condition", chain.condition()},
      {"seed", opts.seed}};
  out.certificate = std::move(cert);
  return out;
}

std::vector<CVec> interior_samples(const ConvexDomain& domain, std::size_t count,
                                   std::uint64_t seed) {
  const int n = domain.dim();
  const auto balls = qmc::ball_points(2 * n, count, seed, qmc::mix64(0x1257ull));
  std::vector<CVec> out;
  out.reserve(count);
  for (const auto& b : balls) {
    const double r = b.norm();
    if (r < 1e-12) {
      out.push_back(domain.witness());
      continue;
    }
    const CVec w = to_complex(RVec(b / r));
    const double t = domain.ray_exit(domain.witness(), w);
    out.push_back(domain.witness() + std::min(r, 1.0 - 1e-9) * t * w);
  }
  return out;
}

ScanResult constant_scan(const ConvexDomain& domain,
                         const std::vector<CVec>& points,
                         const ConvexOptions& opts) {
  if (points.empty()) throw InvalidInput("constant scan needs at least one point");
  ScanResult res;
  res.constant = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    ScanEntry entry;
    entry.point = p;
    try {
      const ConvexBound b = convex_bound(domain, p, opts);
      entry.bound = b.certificate.bound;
      res.constant = std::min(res.constant, entry.bound);
      ++res.succeeded;
    } catch (const Error& e) {
      entry.error = std::string(e.name()) + ": " + e.what();
    }
    res.entries.push_back(std::move(entry));
  }
  if (res.succeeded == 0)
    throw InvalidInput("constant scan failed at every point");
  return res;
}

}  // namespace squeeze
