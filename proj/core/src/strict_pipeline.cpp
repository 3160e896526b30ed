#include "squeeze/strict_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <variant>

#include <Eigen/Eigenvalues>

#include "squeeze/errors.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/qmc.hpp"

namespace squeeze {

namespace {

constexpr double kNewtonTol = 1e-13;
constexpr double kCollinearityTol = 1e-7;
constexpr double kStrongConvexityFloor = 1e-10;
constexpr double kFocalSlack = 1e-9;
constexpr double kEnvelopeCushion = 1e-6;
constexpr double kNearTieFactor = 1e-3;
constexpr double kBoundarySolveEps = 1e-13;

/// real symmetric matrix A with defining function (x-c)^T A (x-c) - 1 for
/// the two ellipsoid kinds
RMat ellipsoid_real_form(const ConvexDomain& domain) {
  const int n = domain.dim();
  return std::visit(
      [&](const auto& k) -> RMat {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          return to_real_matrix(k.form);
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          RMat a = RMat::Zero(2 * n, 2 * n);
          for (int j = 0; j < n; ++j) {
            a(2 * j, 2 * j) = 1.0 / (k.re_axes[j] * k.re_axes[j]);
            a(2 * j + 1, 2 * j + 1) = 1.0 / (k.im_axes[j] * k.im_axes[j]);
          }
          return a;
        } else {
          throw NonSmoothKind("no ellipsoid form for this kind");
        }
      },
      domain.kind());
}

const CVec& ellipsoid_center(const ConvexDomain& domain) {
  return std::visit(
      [&](const auto& k) -> const CVec& {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HermitianEllipsoid> ||
                      std::is_same_v<T, DiagonalRealEllipsoid>) {
          return k.center;
        } else {
          throw NonSmoothKind("no ellipsoid center for this kind");
        }
      },
      domain.kind());
}

/// orthonormal basis of the orthogonal complement of a real unit vector
RMat real_complement(const RVec& u) {
  const Eigen::Index m = u.size();
  RMat a(m, m);
  a.col(0) = u;
  a.rightCols(m - 1) = RMat::Identity(m, m).leftCols(m - 1);
  Eigen::HouseholderQR<RMat> qr(a);
  RMat q = qr.householderQ();
  if (q.col(0).dot(u) < 0) q = -q;
  return q.rightCols(m - 1);
}

double herm_value(const CMat& H, const CVec& zp) {
  if (H.size() == 0) return 0.0;
  return std::real((zp.adjoint() * H * zp).value());
}

}  // namespace

ShapeCurvatures shape_curvatures(const ConvexDomain& domain, const CVec& b) {
  const BoundaryJet jet = domain.boundary_hessian(b);
  ShapeCurvatures out;
  out.gradient_norm = jet.gradient.norm();
  if (out.gradient_norm <= 0.0)
    throw NotStronglyConvex("vanishing boundary gradient");
  const RMat T = real_complement(RVec(jet.gradient / out.gradient_norm));
  const RMat S = (T.transpose() * jet.hessian * T) / out.gradient_norm;
  Eigen::SelfAdjointEigenSolver<RMat> eig(S);
  out.kappa_min = eig.eigenvalues().minCoeff();
  out.kappa_max = eig.eigenvalues().maxCoeff();
  return out;
}

CVec nearest_boundary(const ConvexDomain& domain, const CVec& q,
                      std::size_t probes, std::uint64_t seed) {
  if (int(q.size()) != domain.dim())
    throw InvalidInput("base point dimension does not match the domain");
  if (!domain.contains(q))
    throw InvalidInput("base point must lie inside the domain");
  if (!domain.smooth())
    throw NonSmoothKind("nearest-point pipeline needs a smooth boundary");
  const double scale = domain.scale();

  CVec b;
  if (const auto* ball = std::get_if<Ball>(&domain.kind())) {
    const CVec v = q - ball->center;
    if (v.norm() < 1e-12 * scale)
      throw NonUniqueNearestPoint("base point at the center: every boundary "
                                  "point is nearest");
    b = ball->center + (ball->radius / v.norm()) * v;
  } else {
    const RMat A = ellipsoid_real_form(domain);
    const CVec& c = ellipsoid_center(domain);
    const int m = 2 * domain.dim();
    const RVec qr_ = to_real(q);
    const RVec cr = to_real(c);

    RVec v = qr_ - cr;
    const double g0 = v.dot(A * v);
    if (g0 < 1e-24)
      throw NonUniqueNearestPoint("base point at the center: nearest boundary "
                                  "point is ambiguous");
    RVec x = cr + v / std::sqrt(g0);
    double mu = (x - qr_).norm() / std::max((A * (x - cr)).norm(), 1e-300);

    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const RVec Axc = A * (x - cr);
      RVec F(m + 1);
      F.head(m) = x - qr_ - mu * Axc;
      F[m] = 0.5 * ((x - cr).dot(Axc) - 1.0);
      if (F.norm() <= kNewtonTol * std::max(1.0, scale)) {
        converged = true;
        break;
      }
      RMat J = RMat::Zero(m + 1, m + 1);
      J.topLeftCorner(m, m) = RMat::Identity(m, m) - mu * A;
      J.topRightCorner(m, 1) = -Axc;
      J.bottomLeftCorner(1, m) = Axc.transpose();
      const RVec step = J.fullPivLu().solve(-F);
      x += step.head(m);
      mu += step[m];
    }
    if (!converged || mu <= 0.0)
      throw InvalidInput("nearest-point solve did not converge to the outward "
                         "tangency");
    b = to_complex(x);
  }

  // ambiguity probe: no distant boundary region may come as close as b.
  // Boundary points near the contact itself sit within the relative tie
  // tolerance out to |z - b| ~ lambda sqrt(2 tie / (1 - lambda kappa)), so
  // the exclusion radius follows that second-order model with a safety
  // factor; past the focal distance the model degenerates, and contact_data
  // rejects such base points separately.
  const double lambda = (q - b).norm();
  double focal = 1.0;
  try {
    focal = std::max(0.05, 1.0 - lambda * shape_curvatures(domain, b).kappa_max);
  } catch (const Error&) {
    // keep the flat-boundary model when curvature is unavailable
  }
  const double band = 1.5 * lambda * std::sqrt(2.0 * kNearTieFactor / focal);
  const double sep = std::max(0.01 * scale, band);
  const auto samples = domain.boundary_samples(probes, seed, qmc::mix64(0x9eabULL));
  for (const auto& z : samples) {
    if ((z - q).norm() < lambda * (1.0 + kNearTieFactor) &&
        (z - b).norm() > sep)
      throw NonUniqueNearestPoint("a distant boundary region is as close as "
                                  "the computed nearest point");
  }
  return b;
}

CMat centering_unitary(const CVec& nu) {
  const int n = int(nu.size());
  if (std::abs(nu.norm() - 1.0) > 1e-10)
    throw InvalidInput("normal must be a unit vector");

  std::vector<CVec> cols;
  cols.push_back(nu);
  for (int i = 0; i < n && int(cols.size()) < n; ++i) {
    CVec v = CVec::Zero(n);
    v[i] = 1.0;
    for (const auto& u : cols) v -= hdot(v, u) * u;
    if (v.norm() <= 1e-3) continue;
    v /= v.norm();
    if (std::abs(v[i]) > 1e-8) v *= std::abs(v[i]) / v[i];
    cols.push_back(v);
  }
  if (int(cols.size()) != n)
    throw InvalidInput("normal completion failed to span");

  CMat U(n, n);
  U.row(0) = -cols[0].adjoint();
  for (int j = 1; j < n; ++j) U.row(j) = cols[std::size_t(j)].adjoint();
  if ((U * U.adjoint() - CMat::Identity(n, n)).norm() > 1e-12)
    throw InvalidInput("centering matrix lost unitarity");
  return U;
}

CMat hermitian_form_at(const ConvexDomain& domain, const CVec& b, const CMat& U) {
  const int n = domain.dim();
  const BoundaryJet jet = domain.boundary_hessian(b);
  const double s = jet.gradient.norm();
  if (s <= 0.0) throw NotStronglyConvex("vanishing boundary gradient");

  const RMat Ru = to_real_matrix(U);
  const RVec gw = Ru * jet.gradient;
  RVec expected = RVec::Zero(2 * n);
  expected[0] = -s;
  if ((gw - expected).norm() > 1e-8 * s)
    throw InvalidInput("centered gradient is not aligned with the normal axis");

  if (n == 1) return CMat(0, 0);
  const RMat Hw = Ru * jet.hessian * Ru.transpose();
  const RMat M = Hw.bottomRightCorner(2 * (n - 1), 2 * (n - 1)) / s;

  CMat H(n - 1, n - 1);
  for (int j = 0; j < n - 1; ++j)
    for (int k = 0; k < n - 1; ++k)
      H(j, k) = cplx(0.5 * (M(2 * j, 2 * k) + M(2 * j + 1, 2 * k + 1)),
                     0.5 * (M(2 * j, 2 * k + 1) - M(2 * j + 1, 2 * k)));
  H = 0.5 * (H + H.adjoint()).eval();
  return H;
}

double envelope_radius(const ConvexDomain& domain, const CVec& b, const CVec& nu,
                       std::size_t samples, std::uint64_t seed) {
  const int n = domain.dim();
  const double scale = domain.scale();
  if (std::abs(domain.boundary_residual(b)) > domain.boundary_tol())
    throw NotOnBoundary("enclosing sphere needs a boundary contact point");

  const ShapeCurvatures curv = shape_curvatures(domain, b);
  if (curv.kappa_min <= kStrongConvexityFloor)
    throw NotStronglyConvex("flat principal curvature at the contact point");
  const double candidate = 1.0 / curv.kappa_min;

  // the ratio is a 0/0 limit at the contact whose floating-point noise grows
  // like solve_eps / |z - b|^2, so an unrestricted search would climb into
  // noise; the analytic curvature candidate covers the near-contact limit,
  // and the band is sized so the residual noise stays below the cushion
  const double band = std::min(
      0.1 * scale,
      std::max(1e-6 * scale, std::sqrt(2.0 * candidate * kBoundarySolveEps *
                                       scale / kEnvelopeCushion)));

  auto ratio = [&](const RVec& d) {
    const CVec w = to_complex(d);
    const double t = domain.ray_exit(domain.witness(), w);
    const CVec z = domain.witness() + t * w;
    const CVec v = z - b;
    const double nv = v.norm();
    if (nv <= band) return 0.0;
    const double den = 2.0 * std::real(hdot(CVec(b - z), nu));
    if (den <= 0.0) {
      std::ostringstream os;
      os << "boundary point on the outward side of the tangent plane "
            "(denominator "
         << den << " at distance " << nv << ")";
      throw NotSphericallyExtreme(os.str());
    }
    return nv * nv / den;
  };

  const auto dirs =
      qmc::sphere_directions(2 * n, samples, seed, qmc::mix64(0xe57ULL));
  std::vector<double> vals(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { vals[i] = ratio(dirs[i]); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i] > vals[best]) best = i;

  // pattern-search refinement toward the supremum
  RVec d = dirs[best];
  double val = vals[best];
  double sigma = qmc::angular_gap(2 * n, samples);
  for (int level = 0; level < 16 && sigma > 1e-6; ++level) {
    bool improved = true;
    int guard = 0;
    while (improved && guard++ < 40) {
      improved = false;
      const RMat tb = real_complement(d);
      for (Eigen::Index j = 0; j < tb.cols(); ++j) {
        for (const double s : {sigma, -sigma}) {
          const RVec dn = (d + s * tb.col(j)).normalized();
          const double v = ratio(dn);
          if (v > val + 1e-13) {
            d = dn;
            val = v;
            improved = true;
          }
        }
      }
    }
    sigma *= 0.5;
  }

  return (1.0 + kEnvelopeCushion) * std::max(val, candidate);
}

ContactData contact_data(const ConvexDomain& domain, const CVec& q,
                         const StrictOptions& opts) {
  ContactData c;
  c.q = q;
  c.b = nearest_boundary(domain, q, opts.uniqueness_probes, opts.seed);
  c.lambda_q = (q - c.b).norm();

  const BoundaryJet jet = domain.boundary_hessian(c.b);
  c.gradient_norm = jet.gradient.norm();
  c.nu = to_complex(jet.gradient) / c.gradient_norm;
  if ((q - c.b + c.lambda_q * c.nu).norm() > kCollinearityTol * c.lambda_q)
    throw InvalidInput("base point is off the inward normal ray of its "
                       "nearest boundary point");

  const ShapeCurvatures curv = shape_curvatures(domain, c.b);
  if (curv.kappa_min <= kStrongConvexityFloor)
    throw NotStronglyConvex("boundary is not strongly convex at the contact");
  if (c.lambda_q * curv.kappa_max >= 1.0 - kFocalSlack)
    throw NonUniqueNearestPoint("base point reaches the focal distance of "
                                "the contact");

  c.U = centering_unitary(c.nu);
  c.H = hermitian_form_at(domain, c.b, c.U);
  if (c.H.size() > 0) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(c.H);
    c.c0 = eig.eigenvalues().minCoeff();
    if (c.c0 <= kStrongConvexityFloor)
      throw NotStronglyConvex("limiting Hermitian form is degenerate");
  } else {
    c.c0 = 1.0;
  }
  c.R = envelope_radius(domain, c.b, c.nu, opts.envelope_samples, opts.seed);
  return c;
}

MapChain centering_chain(const ContactData& c) {
  MapChain chain;
  chain.push_back(AffineAtom{c.U, CVec(-c.U * c.b)});
  return chain;
}

MapChain centered_stretch_chain(const ContactData& c) {
  MapChain chain = centering_chain(c);
  chain.push_back(StretchAtom{c.lambda_q});
  return chain;
}

MapChain build_strict_chain(const ConvexDomain& domain, const ContactData& c,
                            double recenter_threshold) {
  const int n = domain.dim();
  MapChain chain = centered_stretch_chain(c);
  chain.push_back(CayleyAtom{n});
  if (n > 1) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(c.H);
    const RVec sq = eig.eigenvalues().cwiseSqrt();
    const CMat S = eig.eigenvectors() * sq.cast<cplx>().asDiagonal() *
                   eig.eigenvectors().adjoint();
    CMat L = CMat::Identity(n, n);
    L.bottomRightCorner(n - 1, n - 1) = S;
    chain.push_back(AffineAtom{L, CVec::Zero(n)});
  }
  const CVec drift = chain.apply(c.q);
  if (drift.norm() > recenter_threshold) {
    if (drift.norm() >= 1.0)
      throw ZeroNotInImage("base point image escaped the unit ball before "
                           "recentering");
    chain.push_back(BallRecenterAtom{drift});
  }
  return chain;
}

StrictBound strict_bound(const ConvexDomain& domain, const CVec& q,
                         const StrictOptions& opts) {
  StrictBound out;
  out.contact = contact_data(domain, q, opts);
  MapChain chain = build_strict_chain(domain, out.contact,
                                      opts.recenter_threshold);

  RadiusOptions rin;
  rin.directions = opts.inner_directions;
  rin.seed = opts.seed;
  out.inner = inner_radius(chain, domain, rin);

  RadiusOptions rout;
  rout.directions = opts.outer_directions;
  rout.seed = opts.seed;
  out.outer = outer_radius(chain, domain, rout);

  out.bound = out.inner.value / out.outer.value;

  MapChain normalized = chain;
  normalized.push_back(ScaleAtom{1.0 / out.outer.value});

  BoundCertificate cert;
  cert.pipeline = "strict";
  cert.domain = domain;
  cert.point = q;
  cert.chain = normalized;
  cert.inner_radius = out.bound;
  cert.outer_radius = out.outer.value;
  cert.bound = out.bound;
  cert.diagnostics = {{"lambda_q", out.contact.lambda_q},
                      {"c0", out.contact.c0},
                      {"enclosing_radius", out.contact.R},
                      {"gradient_norm", out.contact.gradient_norm},
                      {"inner_raw", out.inner.raw},
                      {"inner_tolerance", out.inner.tolerance},
                      {"outer_raw", out.outer.raw},
                      {"outer_tolerance", out.outer.tolerance},
                      {"inner_directions", out.inner.direction_count},
                      {"outer_directions", out.outer.direction_count},
                      {"recentered",
                       chain.size() == std::size_t(domain.dim() > 1 ? 5 : 4)},
                      {"chain_condition", chain.condition()},
                      {"seed", opts.seed}};
  out.certificate = std::move(cert);
  return out;
}

LimitScanResult limit_scan(const ConvexDomain& domain, const CVec& p,
                           std::vector<double> ts,
                           const LimitScanOptions& opts) {
  if (std::abs(domain.boundary_residual(p)) > domain.boundary_tol())
    throw NotOnBoundary("limit scans start from a boundary point");
  if (ts.empty()) throw InvalidInput("limit scan needs at least one distance");

  const CVec nu = domain.supporting_hyperplane_at(p).plane.normal;
  CVec tau = CVec::Zero(p.size());
  bool drifting = false;
  if (opts.drift.size() == p.size() && opts.drift.norm() > 1e-12 &&
      opts.drift_coeff != 0.0) {
    tau = opts.drift - nu * std::real(hdot(opts.drift, nu));
    if (tau.norm() > 1e-12) {
      tau /= tau.norm();
      drifting = true;
    }
  }

  std::sort(ts.begin(), ts.end(), std::greater<double>());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  LimitScanResult res;
  res.boundary_point = p;
  for (const double t : ts) {
    if (!(t > 0.0)) throw InvalidInput("scan distances must be positive");
    CVec q = p - t * nu;
    if (drifting) q += opts.drift_coeff * std::pow(t, opts.drift_exponent) * tau;
    if (!domain.contains(q)) {
      std::ostringstream os;
      os << "scan point left the domain at t = " << t;
      throw PointExited(os.str());
    }
    const StrictBound sb = strict_bound(domain, q, opts.strict);
    res.rows.push_back({t, sb.contact.lambda_q, sb.inner.value, sb.outer.value,
                        sb.bound});
  }
  res.final_bound = res.rows.back().bound;
  return res;
}

double AuxDomainSpec::margin(const CVec& w) const {
  const double u = w[0].real();
  const double v = w[0].imag();
  const CVec wp = w.tail(w.size() - 1);
  switch (kind) {
    case AuxKind::Halfspace:
      return u;
    case AuxKind::Siegel:
      return 2.0 * u - wp.squaredNorm();
    case AuxKind::OmegaHat:
      return 2.0 * u - herm_value(H, wp);
    case AuxKind::GDelta:
      return 2.0 * u + delta * std::abs(v) - (1.0 - delta) * herm_value(H, wp);
    case AuxKind::FDelta:
      return 2.0 * u - delta * std::abs(v) - (1.0 + delta) * herm_value(H, wp);
    case AuxKind::EnclosingSphere:
      return 2.0 * R * u - w.squaredNorm();
  }
  return 0.0;
}

AuxInclusionReport aux_inclusion_check(const ConvexDomain& domain,
                                       const ContactData& c, double delta,
                                       double rho, std::size_t samples,
                                       std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 0.5))
    throw InvalidInput("cushion parameter must lie in (0, 1/2)");
  if (!(rho > 0.0)) throw InvalidInput("sampling radius must be positive");
  const int n = domain.dim();

  const MapChain stretched = centered_stretch_chain(c);
  AuxDomainSpec G{AuxKind::GDelta, c.H, delta, 0.0};
  AuxDomainSpec F{AuxKind::FDelta, c.H, delta, 0.0};

  AuxInclusionReport rep;
  rep.worst_upper_margin = std::numeric_limits<double>::infinity();
  rep.worst_sphere_margin = std::numeric_limits<double>::infinity();

  const auto pts = qmc::ball_points(2 * n, samples, seed, qmc::mix64(0x5a4dULL));
  for (const auto& pr : pts) {
    const CVec w = rho * to_complex(pr);
    const bool in_domain = membership_in_image(stretched, domain, w);
    if (F.margin(w) > 1e-12) {
      ++rep.lower_checked;
      if (!in_domain) {
        std::ostringstream os;
        os << "inner cushion escapes the dilated domain at |w| = " << w.norm()
           << ", cushion margin " << F.margin(w);
        throw InclusionViolated(os.str());
      }
    }
    if (in_domain) {
      ++rep.upper_checked;
      const double m = G.margin(w);
      rep.worst_upper_margin = std::min(rep.worst_upper_margin, m);
      if (m < -1e-12) {
        std::ostringstream os;
        os << "dilated domain escapes the outer cushion at |w| = " << w.norm()
           << ", cushion margin " << m;
        throw InclusionViolated(os.str());
      }
    }
  }

  // global: the centered domain must sit inside its enclosing sphere
  const MapChain centered = centering_chain(c);
  AuxDomainSpec sphere{AuxKind::EnclosingSphere, CMat(), 0.0, c.R};
  const auto bpts =
      domain.boundary_samples(samples, seed, qmc::mix64(0xe5f2ULL));
  const double sphere_tol = 1e-9 * std::max(1.0, c.R * domain.scale());
  for (const auto& z : bpts) {
    ++rep.sphere_checked;
    const double m = sphere.margin(centered.apply(z));
    rep.worst_sphere_margin = std::min(rep.worst_sphere_margin, m);
    if (m < -sphere_tol) {
      std::ostringstream os;
      os << "boundary point leaves the enclosing sphere by " << -m;
      throw InclusionViolated(os.str());
    }
  }
  return rep;
}

double epsilon_of_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5))
    throw InvalidInput("cushion parameter must lie in (0, 1/2)");
  return std::sqrt((1.0 + 0.25 * delta) / (1.0 - delta)) - 1.0;
}

double cayley_involution_residual(const CVec& z) {
  const CayleyAtom atom{int(z.size())};
  return (apply_atom(atom, apply_atom(atom, z)) - z).norm();
}

double cayley_siegel_identity_residual(const CVec& z) {
  const CayleyAtom atom{int(z.size())};
  const CVec w = apply_atom(atom, z);
  const double lhs = 2.0 * w[0].real() - w.tail(w.size() - 1).squaredNorm();
  const double rhs =
      2.0 * (1.0 - z.squaredNorm()) / std::norm(cplx(1.0) + z[0]);
  return std::abs(lhs - rhs);
}

double cushion_transport_residual(const CMat& H, double delta, bool shrunk,
                                  const CVec& w) {
  const CayleyAtom atom{int(w.size())};
  const CVec z = apply_atom(atom, w);  // halfspace-side point
  AuxDomainSpec side{shrunk ? AuxKind::FDelta : AuxKind::GDelta, H, delta, 0.0};
  const double pulled = side.margin(z) * std::norm(cplx(1.0) + w[0]) / 2.0;

  const double u2 = std::norm(w[0]);
  const double iv = std::abs(w[0].imag());
  const double h = herm_value(H, CVec(w.tail(w.size() - 1)));
  const double direct = shrunk
                            ? 1.0 - u2 - delta * iv - (1.0 + delta) * h
                            : 1.0 - u2 + delta * iv - (1.0 - delta) * h;
  return std::abs(pulled - direct);
}

}  // namespace squeeze
