#include "squeeze/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "squeeze/errors.hpp"
#include "squeeze/qmc.hpp"

namespace squeeze {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double positive_root(double alpha, double beta, double gamma_minus_level) {
  // smallest t > 0 with gamma + 2 beta t + alpha t^2 = level, given the start
  // value is below the level (gamma_minus_level < 0) and alpha > 0
  const double disc = beta * beta - alpha * gamma_minus_level;
  return (-beta + std::sqrt(std::max(disc, 0.0))) / alpha;
}

/// dt/dw for the quadratic branch gamma + 2 beta(w) t + alpha(w) t^2 = const
RVec quadratic_exit_gradient(double t, double alpha, double beta,
                             const RVec& grad_alpha, const RVec& grad_beta) {
  const double denom = 2.0 * (beta + alpha * t);
  return (-t / denom) * (2.0 * grad_beta + t * grad_alpha);
}

}  // namespace

double RealHyperplane::violation(const CVec& z) const {
  return std::real(hdot(z, normal)) - offset;
}

ConvexDomain::ConvexDomain()
    : ConvexDomain(Ball{CVec::Zero(1), 1.0}, CVec::Zero(1)) {}

ConvexDomain::ConvexDomain(DomainKind kind, CVec witness,
                           std::optional<double> declared_bounding_radius)
    : kind_(std::move(kind)), witness_(std::move(witness)) {
  const int n = dim();
  if (n < 1 || n > kMaxDim) throw InvalidInput("dimension must be in [1,8]");

  // intrinsic bounding radius where the kind provides one
  std::optional<double> computed;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          computed = k.center.norm() + k.radius;
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          Eigen::SelfAdjointEigenSolver<CMat> es(k.form);
          const double lmin = es.eigenvalues().minCoeff();
          if (lmin <= 0.0) throw InvalidInput("ellipsoid form not positive definite");
          computed = k.center.norm() + 1.0 / std::sqrt(lmin);
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          computed = k.center.norm() +
                     std::max(k.re_axes.maxCoeff(), k.im_axes.maxCoeff());
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          computed = k.center.norm() + k.radii.norm();
        } else if constexpr (std::is_same_v<T, Intersection>) {
          for (const auto& m : k.members)
            if (m.bounded())
              computed = computed ? std::min(*computed, m.bounding_radius())
                                  : m.bounding_radius();
        }
      },
      kind_);
  if (computed)
    bounding_radius_ = declared_bounding_radius
                           ? std::min(*computed, *declared_bounding_radius)
                           : computed;
  else
    bounding_radius_ = declared_bounding_radius;

  validate();
}

void ConvexDomain::validate() const {
  const int n = dim();
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          if (k.center.size() != n || k.radius <= 0.0)
            throw InvalidInput("bad ball parameters");
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          if (k.center.size() != n || k.form.rows() != n || k.form.cols() != n)
            throw InvalidInput("bad ellipsoid parameters");
          if ((k.form - k.form.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw InvalidInput("ellipsoid form not Hermitian");
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          if (k.center.size() != n || k.re_axes.size() != n || k.im_axes.size() != n ||
              k.re_axes.minCoeff() <= 0.0 || k.im_axes.minCoeff() <= 0.0)
            throw InvalidInput("bad diagonal ellipsoid parameters");
        } else if constexpr (std::is_same_v<T, HalfspacePolytope>) {
          if (k.faces.empty()) throw InvalidInput("polytope needs at least one face");
          for (const auto& f : k.faces) {
            if (f.normal.size() != n) throw InvalidInput("face dimension mismatch");
            if (std::abs(f.normal.norm() - 1.0) > 1e-12)
              throw InvalidInput("face normal not unit length");
          }
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          if (k.center.size() != n || k.radii.size() != n || k.radii.minCoeff() <= 0.0)
            throw InvalidInput("bad polydisc parameters");
        } else if constexpr (std::is_same_v<T, Intersection>) {
          if (k.members.empty()) throw InvalidInput("empty intersection");
          for (const auto& m : k.members)
            if (m.dim() != n) throw InvalidInput("intersection dimension mismatch");
        }
      },
      kind_);
  if (!contains(witness_)) throw InvalidInput("witness point not in the interior");
}

double ConvexDomain::bounding_radius() const {
  if (!bounding_radius_) throw UnboundedDomain("no bounding radius available");
  return *bounding_radius_;
}

double ConvexDomain::scale() const {
  return bounding_radius_ ? std::max(1.0, *bounding_radius_)
                          : std::max(1.0, witness_.norm() + 1.0);
}

double ConvexDomain::boundary_tol() const { return 1e-9 * scale(); }

bool ConvexDomain::smooth() const {
  return std::holds_alternative<Ball>(kind_) ||
         std::holds_alternative<HermitianEllipsoid>(kind_) ||
         std::holds_alternative<DiagonalRealEllipsoid>(kind_);
}

bool ConvexDomain::contains(const CVec& z) const {
  if (int(z.size()) != dim())
    throw InvalidInput("point dimension does not match the domain");
  return std::visit(
      [&](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return (z - k.center).norm() < k.radius;
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          const CVec d = z - k.center;
          return std::real(d.dot(k.form * d)) < 1.0;
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          double s = 0.0;
          for (int j = 0; j < dim(); ++j) {
            const double dx = z[j].real() - k.center[j].real();
            const double dy = z[j].imag() - k.center[j].imag();
            s += dx * dx / (k.re_axes[j] * k.re_axes[j]) +
                 dy * dy / (k.im_axes[j] * k.im_axes[j]);
          }
          return s < 1.0;
        } else if constexpr (std::is_same_v<T, HalfspacePolytope>) {
          for (const auto& f : k.faces)
            if (f.violation(z) >= 0.0) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          for (int j = 0; j < dim(); ++j)
            if (std::abs(z[j] - k.center[j]) >= k.radii[j]) return false;
          return true;
        } else {  // Intersection
          for (const auto& m : k.members)
            if (!m.contains(z)) return false;
          return true;
        }
      },
      kind_);
}

double ConvexDomain::boundary_residual(const CVec& z) const {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return (z - k.center).norm() - k.radius;
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          const CVec d = z - k.center;
          const double g = std::real(d.dot(k.form * d));
          if (g <= 0.0) return -1.0 / std::sqrt(k.form.norm());
          // radial distance to the boundary point along the center ray
          return d.norm() * (1.0 - 1.0 / std::sqrt(g));
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          double g = 0.0;
          for (int j = 0; j < dim(); ++j) {
            const double dx = z[j].real() - k.center[j].real();
            const double dy = z[j].imag() - k.center[j].imag();
            g += dx * dx / (k.re_axes[j] * k.re_axes[j]) +
                 dy * dy / (k.im_axes[j] * k.im_axes[j]);
          }
          if (g <= 0.0) return -std::min(k.re_axes.minCoeff(), k.im_axes.minCoeff());
          return (z - k.center).norm() * (1.0 - 1.0 / std::sqrt(g));
        } else if constexpr (std::is_same_v<T, HalfspacePolytope>) {
          double worst = -kInf;
          for (const auto& f : k.faces) worst = std::max(worst, f.violation(z));
          return worst;
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          double worst = -kInf;
          for (int j = 0; j < dim(); ++j)
            worst = std::max(worst, std::abs(z[j] - k.center[j]) - k.radii[j]);
          return worst;
        } else {
          double worst = -kInf;
          for (const auto& m : k.members)
            worst = std::max(worst, m.boundary_residual(z));
          return worst;
        }
      },
      kind_);
}

double ConvexDomain::ray_exit(const CVec& q, const CVec& w) const {
  const double nw = w.norm();
  if (nw < 1e-14) throw InvalidInput("zero ray direction");
  // evaluate along the unit direction for conditioning, then convert the
  // arc-length exit back to the parameter of the ray q + t w
  return ray_exit_grad(q, w / nw).t / nw;
}

RayExit ConvexDomain::ray_exit_grad(const CVec& q, const CVec& w) const {
  const int n = dim();
  RayExit out;
  out.gradient = RVec::Zero(2 * n);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const CVec d = q - k.center;
          const double alpha = w.squaredNorm();
          const double beta = std::real(hdot(w, d));
          const double gm = d.squaredNorm() - k.radius * k.radius;
          if (gm >= 0.0) throw InvalidInput("ray base point not interior");
          out.t = positive_root(alpha, beta, gm);
          out.gradient = quadratic_exit_gradient(out.t, alpha, beta,
                                                 2.0 * to_real(w), to_real(d));
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          const CVec d = q - k.center;
          const CVec Qw = k.form * w;
          const CVec Qd = k.form * d;
          const double alpha = std::real(w.dot(Qw));
          const double beta = std::real(hdot(w, Qd));
          const double gm = std::real(d.dot(Qd)) - 1.0;
          if (gm >= 0.0) throw InvalidInput("ray base point not interior");
          out.t = positive_root(alpha, beta, gm);
          out.gradient = quadratic_exit_gradient(out.t, alpha, beta,
                                                 2.0 * to_real(Qw), to_real(Qd));
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          double alpha = 0.0, beta = 0.0, gm = -1.0;
          RVec ga = RVec::Zero(2 * n), gb = RVec::Zero(2 * n);
          for (int j = 0; j < n; ++j) {
            const double ax2 = k.re_axes[j] * k.re_axes[j];
            const double ay2 = k.im_axes[j] * k.im_axes[j];
            const double dx = q[j].real() - k.center[j].real();
            const double dy = q[j].imag() - k.center[j].imag();
            const double wx = w[j].real(), wy = w[j].imag();
            alpha += wx * wx / ax2 + wy * wy / ay2;
            beta += dx * wx / ax2 + dy * wy / ay2;
            gm += dx * dx / ax2 + dy * dy / ay2;
            ga[2 * j] = 2.0 * wx / ax2;
            ga[2 * j + 1] = 2.0 * wy / ay2;
            gb[2 * j] = dx / ax2;
            gb[2 * j + 1] = dy / ay2;
          }
          if (gm >= 0.0) throw InvalidInput("ray base point not interior");
          out.t = positive_root(alpha, beta, gm);
          out.gradient = quadratic_exit_gradient(out.t, alpha, beta, ga, gb);
        } else if constexpr (std::is_same_v<T, HalfspacePolytope>) {
          out.t = kInf;
          int best = -1;
          for (int i = 0; i < int(k.faces.size()); ++i) {
            const double s = std::real(hdot(w, k.faces[i].normal));
            if (s <= 0.0) continue;
            const double g = k.faces[i].offset - std::real(hdot(q, k.faces[i].normal));
            if (g <= 0.0) throw InvalidInput("ray base point not interior");
            const double t = g / s;
            if (t < out.t) {
              out.t = t;
              best = i;
            }
          }
          if (best >= 0) {
            const double s = std::real(hdot(w, k.faces[best].normal));
            out.gradient = (-out.t / s) * to_real(k.faces[best].normal);
          }
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          out.t = kInf;
          int best = -1;
          double balpha = 0, bbeta = 0;
          for (int j = 0; j < n; ++j) {
            const double a2 = std::norm(w[j]);
            if (a2 < 1e-28) continue;
            const cplx d = q[j] - k.center[j];
            const double beta = std::real(w[j] * std::conj(d));
            const double gm = std::norm(d) - k.radii[j] * k.radii[j];
            if (gm >= 0.0) throw InvalidInput("ray base point not interior");
            const double t = positive_root(a2, beta, gm);
            if (t < out.t) {
              out.t = t;
              best = j;
              balpha = a2;
              bbeta = beta;
            }
          }
          if (best >= 0) {
            RVec ga = RVec::Zero(2 * n), gb = RVec::Zero(2 * n);
            ga[2 * best] = 2.0 * w[best].real();
            ga[2 * best + 1] = 2.0 * w[best].imag();
            const cplx d = q[best] - k.center[best];
            gb[2 * best] = d.real();
            gb[2 * best + 1] = d.imag();
            out.gradient = quadratic_exit_gradient(out.t, balpha, bbeta, ga, gb);
          }
        } else {  // Intersection: the inside-interval is the intersection of
          out.t = kInf;  // member intervals, so the exit is the exact min
          for (const auto& m : k.members) {
            RayExit e = m.ray_exit_grad(q, w);
            if (e.t < out.t) out = e;
          }
        }
      },
      kind_);
  return out;
}

SupportingPlane ConvexDomain::supporting_hyperplane_at(const CVec& zstar) const {
  const double tol = boundary_tol();
  if (std::abs(boundary_residual(zstar)) > tol)
    throw NotOnBoundary("point is not within tolerance of the boundary");

  SupportingPlane sp;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          CVec a = zstar - k.center;
          a /= a.norm();
          sp.plane = {a, std::real(hdot(zstar, a))};
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          CVec a = 2.0 * (k.form * (zstar - k.center));
          a /= a.norm();
          sp.plane = {a, std::real(hdot(zstar, a))};
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          CVec a(dim());
          for (int j = 0; j < dim(); ++j) {
            const double dx = zstar[j].real() - k.center[j].real();
            const double dy = zstar[j].imag() - k.center[j].imag();
            a[j] = cplx(2.0 * dx / (k.re_axes[j] * k.re_axes[j]),
                        2.0 * dy / (k.im_axes[j] * k.im_axes[j]));
          }
          a /= a.norm();
          sp.plane = {a, std::real(hdot(zstar, a))};
        } else if constexpr (std::is_same_v<T, HalfspacePolytope>) {
          int active = -1, count = 0;
          for (int i = 0; i < int(k.faces.size()); ++i)
            if (std::abs(k.faces[i].violation(zstar)) <= tol) {
              if (active < 0) active = i;
              ++count;
            }
          if (active < 0) throw NotOnBoundary("no active polytope face");
          sp.plane = k.faces[active];
          sp.ambiguous = count > 1;
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          int active = -1, count = 0;
          for (int j = 0; j < dim(); ++j)
            if (std::abs(std::abs(zstar[j] - k.center[j]) - k.radii[j]) <= tol) {
              if (active < 0) active = j;
              ++count;
            }
          if (active < 0) throw NotOnBoundary("no active polydisc face");
          CVec a = CVec::Zero(dim());
          a[active] = (zstar[active] - k.center[active]) /
                      std::abs(zstar[active] - k.center[active]);
          sp.plane = {a, std::real(hdot(zstar, a))};
          sp.ambiguous = count > 1;
        } else {
          int active = -1, count = 0;
          for (int i = 0; i < int(k.members.size()); ++i)
            if (std::abs(k.members[i].boundary_residual(zstar)) <= tol) {
              if (active < 0) active = i;
              ++count;
            }
          if (active < 0) throw NotOnBoundary("no active intersection member");
          sp = k.members[active].supporting_hyperplane_at(zstar);
          sp.ambiguous = sp.ambiguous || count > 1;
        }
      },
      kind_);
  return sp;
}

std::vector<CVec> ConvexDomain::boundary_samples(std::size_t count,
                                                 std::uint64_t seed,
                                                 std::uint64_t stream) const {
  if (!bounded()) throw UnboundedDomain("cannot sample an unbounded boundary");
  qmc::Lattice lat(2 * dim(), seed, qmc::mix64(0xb0dull) ^ stream);
  std::vector<CVec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const CVec w = to_complex(qmc::sphere_direction(lat, i));
    const double t = ray_exit(witness_, w);
    out.push_back(witness_ + t * w);
  }
  return out;
}

BoundaryJet ConvexDomain::boundary_hessian(const CVec& zstar) const {
  if (!smooth())
    throw NonSmoothKind("no analytic boundary Hessian for this kind");
  if (std::abs(boundary_residual(zstar)) > boundary_tol())
    throw NotOnBoundary("point is not within tolerance of the boundary");
  const int n = dim();
  BoundaryJet jet;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          jet.gradient = 2.0 * to_real(CVec(zstar - k.center));
          jet.hessian = 2.0 * RMat::Identity(2 * n, 2 * n);
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          jet.gradient = 2.0 * to_real(CVec(k.form * (zstar - k.center)));
          jet.hessian = to_real_matrix(CMat(2.0 * k.form));
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          jet.gradient = RVec(2 * n);
          jet.hessian = RMat::Zero(2 * n, 2 * n);
          for (int j = 0; j < n; ++j) {
            const double ax2 = k.re_axes[j] * k.re_axes[j];
            const double ay2 = k.im_axes[j] * k.im_axes[j];
            jet.gradient[2 * j] = 2.0 * (zstar[j].real() - k.center[j].real()) / ax2;
            jet.gradient[2 * j + 1] =
                2.0 * (zstar[j].imag() - k.center[j].imag()) / ay2;
            jet.hessian(2 * j, 2 * j) = 2.0 / ax2;
            jet.hessian(2 * j + 1, 2 * j + 1) = 2.0 / ay2;
          }
        }
      },
      kind_);
  return jet;
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
  if (!a.is_array()) throw InvalidInput("expected an array of [re,im] pairs");
  CVec z(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].is_array() || a[k].size() != 2)
      throw InvalidInput("complex entries must be [re,im]");
    z[k] = cplx(a[k][0].get<double>(), a[k][1].get<double>());
  }
  return z;
}

json rvec_to_json(const RVec& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

RVec rvec_from_json(const json& a) {
  RVec v(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k].get<double>();
  return v;
}

json cmat_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(cvec_to_json(m.row(i)));
  return rows;
}

CMat cmat_from_json(const json& rows) {
  CMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CVec r = cvec_from_json(rows[i]);
    if (r.size() != m.cols()) throw InvalidInput("ragged matrix");
    m.row(i) = r;
  }
  return m;
}

json kind_to_json(const DomainKind& kind) {
  json j;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ball>) {
          j["kind"] = "ball";
          j["parameters"] = {{"center", cvec_to_json(k.center)},
                             {"radius", k.radius}};
        } else if constexpr (std::is_same_v<T, HermitianEllipsoid>) {
          j["kind"] = "hermitian_ellipsoid";
          j["parameters"] = {{"center", cvec_to_json(k.center)},
                             {"form", cmat_to_json(k.form)}};
        } else if constexpr (std::is_same_v<T, DiagonalRealEllipsoid>) {
          j["kind"] = "diagonal_real_ellipsoid";
          j["parameters"] = {{"center", cvec_to_json(k.center)},
                             {"re_axes", rvec_to_json(k.re_axes)},
                             {"im_axes", rvec_to_json(k.im_axes)}};
        } else if constexpr (std::is_same_v<T, HalfspacePolytope>) {
          j["kind"] = "halfspace_polytope";
          json faces = json::array();
          for (const auto& f : k.faces)
            faces.push_back({{"normal", cvec_to_json(f.normal)},
                             {"offset", f.offset}});
          j["parameters"] = {{"faces", faces}};
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          j["kind"] = "polydisc";
          j["parameters"] = {{"center", cvec_to_json(k.center)},
                             {"radii", rvec_to_json(k.radii)}};
        } else {
          j["kind"] = "intersection";
          json members = json::array();
          for (const auto& m : k.members) members.push_back(kind_to_json(m.kind()));
          j["parameters"] = {{"members", members}};
        }
      },
      kind);
  return j;
}

DomainKind kind_from_json(const json& j, const CVec& witness);

DomainKind kind_from_json(const json& j, const CVec& witness) {
  const std::string kind = j.at("kind").get<std::string>();
  const json& p = j.at("parameters");
  if (kind == "ball") {
    return Ball{cvec_from_json(p.at("center")), p.at("radius").get<double>()};
  } else if (kind == "hermitian_ellipsoid") {
    CMat q = cmat_from_json(p.at("form"));
    if ((q - q.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw InvalidInput("ellipsoid form not Hermitian");
    q = ((q + CMat(q.adjoint())) / 2.0).eval();
    return HermitianEllipsoid{cvec_from_json(p.at("center")), q};
  } else if (kind == "diagonal_real_ellipsoid") {
    return DiagonalRealEllipsoid{cvec_from_json(p.at("center")),
                                 rvec_from_json(p.at("re_axes")),
                                 rvec_from_json(p.at("im_axes"))};
  } else if (kind == "halfspace_polytope") {
    HalfspacePolytope poly;
    for (const auto& fj : p.at("faces")) {
      RealHyperplane f{cvec_from_json(fj.at("normal")),
                       fj.at("offset").get<double>()};
      const double nn = f.normal.norm();
      if (nn < 1e-12) throw InvalidInput("zero face normal");
      f.offset /= nn;  // accept non-normalized input, rescale to unit normal
      f.normal /= nn;
      poly.faces.push_back(std::move(f));
    }
    return poly;
  } else if (kind == "polydisc") {
    return Polydisc{cvec_from_json(p.at("center")), rvec_from_json(p.at("radii"))};
  } else if (kind == "intersection") {
    Intersection inter;
    for (const auto& mj : p.at("members"))
      inter.members.emplace_back(kind_from_json(mj, witness), witness);
    return inter;
  }
  throw InvalidInput("unknown domain kind '" + kind + "'");
}

}  // namespace

nlohmann::json ConvexDomain::to_json() const {
  json j = kind_to_json(kind_);
  j["witness_point"] = cvec_to_json(witness_);
  if (bounding_radius_)
    j["bounding_radius"] = *bounding_radius_;
  else
    j["bounding_radius"] = "unbounded";
  return j;
}

ConvexDomain ConvexDomain::from_json(const nlohmann::json& j) {
  const CVec witness = cvec_from_json(j.at("witness_point"));
  std::optional<double> declared;
  if (j.contains("bounding_radius") && j["bounding_radius"].is_number())
    declared = j["bounding_radius"].get<double>();
  return ConvexDomain(kind_from_json(j, witness), witness, declared);
}

ConvexDomain ConvexDomain::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open domain file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("domain file parse error: ") + e.what());
  }
  return from_json(j);
}

}  // namespace squeeze
