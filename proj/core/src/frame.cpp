#include "squeeze/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "squeeze/errors.hpp"
#include "squeeze/qmc.hpp"

namespace squeeze {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-8;

struct Candidate {
  double value = kInf;
  CVec direction;  // ambient, unit
};

/// exit time as a function of real coefficients c (w = V c), with gradient
struct SliceObjective {
  const ConvexDomain& domain;
  const CVec& q;
  const CMat& V;

  CVec lift(const RVec& c) const { return V * to_complex(c); }

  double value(const RVec& c) const {
    const CVec w = lift(c);
    try {
      return domain.ray_exit_grad(q, w).t;
    } catch (const InvalidInput&) {
      return kInf;
    }
  }

  double value_grad(const RVec& c, RVec& grad) const {
    const CVec w = lift(c);
    RayExit e;
    try {
      e = domain.ray_exit_grad(q, w);
    } catch (const InvalidInput&) {
      return kInf;
    }
    if (!std::isfinite(e.t)) return kInf;
    const Eigen::Index d = V.cols();
    grad.resize(2 * d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const CVec vi = V.col(i);
      grad[2 * i] = e.gradient.dot(to_real(vi));
      grad[2 * i + 1] = e.gradient.dot(to_real(CVec(cplx(0, 1) * vi)));
    }
    return e.t;
  }
};

/// projected gradient descent on the unit sphere of coefficients
Candidate descend(const SliceObjective& obj, RVec c, double scale) {
  c.normalize();
  double f = obj.value(c);
  if (!std::isfinite(f)) return {};
  RVec grad;
  const double gtol = 1e-10 * std::max(1.0, scale);
  for (int it = 0; it < 200; ++it) {
    f = obj.value_grad(c, grad);
    if (!std::isfinite(f)) break;
    RVec gt = grad - grad.dot(c) * c;  // tangential component
    const double gn = gt.norm();
    if (gn <= gtol) break;
    double eta = std::max(0.5 * f, 0.25 * scale) / (gn + 1e-300);
    bool moved = false;
    for (int bt = 0; bt < 48; ++bt) {
      RVec cn = (c - eta * gt).normalized();
      const double fn = obj.value(cn);
      if (std::isfinite(fn) && fn <= f - 0.3 * eta * gn * gn) {
        c = cn;
        f = fn;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  Candidate out;
  out.value = f;
  out.direction = obj.lift(c);
  out.direction.normalize();
  return out;
}

/// gradient-norm polish of a local minimizer.  Value-based line search stalls
/// once objective differences drop into floating noise (angular error ~1e-6
/// at boundary distance 1e-4), which is too coarse for the envelope checks
/// downstream; Newton-like steps judged by the analytic tangential gradient
/// sharpen the direction a further five or six digits.
Candidate polish(const SliceObjective& obj, const Candidate& cand) {
  RVec c = to_real(CVec(obj.V.adjoint() * cand.direction));
  if (c.norm() <= 0.5) return cand;  // winner left the slice numerically
  c.normalize();
  RVec grad;
  double f = obj.value_grad(c, grad);
  if (!std::isfinite(f)) return cand;
  RVec gt = grad - grad.dot(c) * c;
  double gn = gt.norm();
  for (int it = 0; it < 60 && gn > 1e-11 * std::max(f, 1e-300); ++it) {
    // the exit time is 1-homogeneous in 1/|c|, so its angular curvature at a
    // flat contact equals the value; 1/f is the Newton step for that model
    double eta = 1.0 / std::max(f, 1e-300);
    bool moved = false;
    RVec grad_n;
    for (int bt = 0; bt < 30; ++bt) {
      const RVec cn = (c - eta * gt).normalized();
      const double fn = obj.value_grad(cn, grad_n);
      if (std::isfinite(fn)) {
        const RVec gtn = grad_n - grad_n.dot(cn) * cn;
        if (gtn.norm() < gn * (1.0 - 1e-3)) {
          c = cn;
          f = fn;
          gt = gtn;
          gn = gt.norm();
          moved = true;
          break;
        }
      }
      eta *= 0.5;
    }
    if (!moved) break;  // nonsmooth contact or at the noise floor
  }
  Candidate out;
  out.value = f;
  out.direction = obj.lift(c);
  out.direction.normalize();
  return out;
}

SliceRadius pick_winner(const ConvexDomain& domain, const CVec& q,
                        std::vector<Candidate>& candidates) {
  double best = kInf;
  for (const auto& c : candidates) best = std::min(best, c.value);
  if (!std::isfinite(best))
    throw UnboundedSlice("no direction in the slice subspace exits the domain");
  const double tie = kTieTol * std::max(1.0, best);
  // Compare by phase-normalized coordinates; break exact normalized ties by
  // the raw coordinates so the returned vector is an actual minimizer (exit
  // times are not phase-invariant on non-circular kinds).
  CVec winner, winner_key;
  bool have = false;
  for (const auto& c : candidates) {
    if (!(c.value <= best + tie)) continue;
    const CVec key = phase_normalized(c.direction);
    const int cmp = have ? lex_compare(key, winner_key) : 1;
    if (cmp > 0 || (cmp == 0 && lex_compare(c.direction, winner) > 0)) {
      winner = c.direction;
      winner_key = key;
      have = true;
    }
  }
  SliceRadius out;
  out.direction = winner;
  out.lambda = domain.ray_exit(q, winner);
  out.contact = q + out.lambda * winner;
  return out;
}

SliceRadius slice_radius_polytope(const ConvexDomain& domain,
                                  const HalfspacePolytope& poly, const CVec& q,
                                  const CMat& V) {
  double best = kInf;
  std::vector<std::pair<double, CVec>> rows;
  for (const auto& f : poly.faces) {
    const CVec pa = V.adjoint() * f.normal;  // coefficients of P_V a
    const double np = pa.norm();
    if (np <= 1e-14) continue;  // face parallel to the slice
    const double gap = f.offset - std::real(hdot(q, f.normal));
    if (gap <= 0.0) throw InvalidInput("slice base point not interior");
    rows.emplace_back(gap / np, V * (pa / np));
    best = std::min(best, gap / np);
  }
  if (!std::isfinite(best))
    throw UnboundedSlice("every face is parallel to the slice subspace");
  std::vector<Candidate> candidates;
  for (auto& [val, dir] : rows)
    if (val <= best + kTieTol * std::max(1.0, best))
      candidates.push_back({val, dir});
  return pick_winner(domain, q, candidates);
}

}  // namespace

SliceRadius slice_radius(const ConvexDomain& domain, const CVec& q,
                         const CMat& V, std::uint64_t seed) {
  if (V.cols() < 1 || V.rows() != domain.dim())
    throw InvalidInput("bad slice basis");
  if ((V.adjoint() * V - CMat::Identity(V.cols(), V.cols())).norm() > 1e-10)
    throw InvalidInput("slice basis not orthonormal");
  if (!domain.contains(q)) throw InvalidInput("slice base point not interior");

  if (const auto* poly = std::get_if<HalfspacePolytope>(&domain.kind()))
    return slice_radius_polytope(domain, *poly, q, V);

  const Eigen::Index d = V.cols();
  const int dim_real = int(2 * d);
  SliceObjective obj{domain, q, V};
  const double scale = domain.scale();

  std::vector<RVec> starts;
  for (Eigen::Index i = 0; i < d; ++i) {  // basis directions v_i and i*v_i
    RVec c = RVec::Zero(dim_real);
    c[2 * i] = 1.0;
    starts.push_back(c);
    RVec ci = RVec::Zero(dim_real);
    ci[2 * i + 1] = 1.0;
    starts.push_back(ci);
  }
  for (auto& s : qmc::sphere_directions(dim_real, std::size_t(64) * dim_real,
                                        seed, qmc::mix64(0x51Cull)))
    starts.push_back(s);

  std::vector<Candidate> candidates;
  candidates.reserve(starts.size());
  for (const auto& s : starts) {
    Candidate c = descend(obj, s, scale);
    if (c.direction.size() > 0) candidates.push_back(std::move(c));
  }
  if (candidates.empty())
    throw UnboundedSlice("no direction in the slice subspace exits the domain");
  SliceRadius win = pick_winner(domain, q, candidates);
  const Candidate sharp = polish(obj, Candidate{win.lambda, win.direction});
  win.direction = sharp.direction;
  win.lambda = domain.ray_exit(q, win.direction);
  win.contact = q + win.lambda * win.direction;
  return win;
}

Frame build_frame(const ConvexDomain& domain, const CVec& q, std::uint64_t seed) {
  const int n = domain.dim();
  if (int(q.size()) != n)
    throw InvalidInput("base point dimension does not match the domain");
  Frame frame;
  frame.q = q;
  frame.vectors = CMat(n, n);
  frame.radii = RVec(n);

  CMat complement = CMat::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    const SliceRadius s = slice_radius(domain, q, complement, seed);
    frame.vectors.col(k) = s.direction;
    frame.radii[k] = s.lambda;
    frame.contacts.push_back(s.contact);
    if (k + 1 < n) {
      // complement of span(e^1..e^{k+1}): trailing columns of the full
      // unitary factor from a Householder QR of the chosen directions
      Eigen::HouseholderQR<CMat> qr(frame.vectors.leftCols(k + 1));
      const CMat full = qr.householderQ();
      complement = full.rightCols(n - k - 1);
    }
  }
  return frame;
}

}  // namespace squeeze
