#include "squeeze/image_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "squeeze/errors.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/qmc.hpp"

namespace squeeze {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t default_directions(int n) {
  if (n <= 1) return 1024;
  if (n == 2) return 4096;
  return 65536;
}

/// first radius along direction d at which d leaves the image; marching from
/// zero (so no star-shapedness assumption) followed by bisection on the
/// first crossing bracket.  Returns a radius verified inside.
double first_exit(const MapChain& chain, const ConvexDomain& domain,
                  const CVec& d, double step_hint) {
  double step = step_hint > 0 ? step_hint : 1.0 / 32.0;
  double lo = 0.0, t = step;
  for (int it = 0;; ++it) {
    if (!membership_in_image(chain, domain, CVec(t * d))) break;
    lo = t;
    t += step;
    if (it % 128 == 127) step *= 2.0;
    if (it > 4096) return kInf;  // image swallows the whole ray
  }
  double hi = t;
  for (int it = 0; it < 64 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (membership_in_image(chain, domain, CVec(mid * d)))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

/// deterministic orthonormal tangent basis at a real unit vector
RMat tangent_basis(const RVec& d) {
  const Eigen::Index m = d.size();
  RMat a(m, m);
  a.col(0) = d;
  a.rightCols(m - 1) = RMat::Identity(m, m).leftCols(m - 1);
  Eigen::HouseholderQR<RMat> qr(a);
  RMat q = qr.householderQ();
  // keep the sign convention pinned to d
  if (q.col(0).dot(d) < 0) q = -q;
  return q.rightCols(m - 1);
}

struct ProfileExtremum {
  RVec direction;
  double value = 0.0;
};

/// pattern search for a local extremum of a radial profile
template <typename F>
ProfileExtremum refine_direction(const F& profile, RVec d, double value,
                                 double initial_step, bool minimize) {
  double sigma = initial_step;
  const double sgn = minimize ? 1.0 : -1.0;
  for (int level = 0; level < 18 && sigma > 1e-7; ++level) {
    bool improved = true;
    int guard = 0;
    while (improved && guard++ < 40) {
      improved = false;
      const RMat tb = tangent_basis(d);
      for (Eigen::Index j = 0; j < tb.cols(); ++j) {
        for (const double s : {sigma, -sigma}) {
          const RVec dn = (d + s * tb.col(j)).normalized();
          const double v = profile(dn);
          if (sgn * v < sgn * value - 1e-13) {
            d = dn;
            value = v;
            improved = true;
          }
        }
      }
    }
    sigma *= 0.5;
  }
  return {d, value};
}

}  // namespace

RadiusEstimate inner_radius(const MapChain& chain, const ConvexDomain& domain,
                            const RadiusOptions& opts) {
  const int n = domain.dim();
  const std::size_t N = opts.directions ? opts.directions : default_directions(n);

  {
    bool singular = false;
    const CVec zero = CVec::Zero(n);
    if (!membership_in_image(chain, domain, zero, &singular))
      throw ZeroNotInImage(singular ? "chain singular at the origin"
                                    : "origin not in the chain image");
  }

  const auto dirs = qmc::sphere_directions(2 * n, N, opts.seed, qmc::mix64(0x17ull));
  std::vector<double> exits(N);
  parallel_for(N, [&](std::size_t i) {
    exits[i] = first_exit(chain, domain, to_complex(dirs[i]), 0.0);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (exits[i] < exits[best]) best = i;
  if (!std::isfinite(exits[best]))
    throw ZeroNotInImage("no direction leaves the image; nothing to certify");

  const double theta = qmc::angular_gap(2 * n, N);
  auto profile = [&](const RVec& d) {
    return first_exit(chain, domain, to_complex(d), exits[best] / 8.0);
  };
  const auto refined =
      refine_direction(profile, dirs[best], exits[best], theta, /*minimize=*/true);

  // mean curvature of the radial profile at the minimizer (trace estimate,
  // rotation-stable); sets the missed-dip margin for the certified value
  const double h = theta / 4.0;
  const RMat tb = tangent_basis(refined.direction);
  double curv = 0.0;
  for (Eigen::Index j = 0; j < tb.cols(); ++j) {
    const double fp = profile((refined.direction + h * tb.col(j)).normalized());
    const double fm = profile((refined.direction - h * tb.col(j)).normalized());
    curv += (fp + fm - 2.0 * refined.value) / (h * h);
  }
  curv = std::max(curv / double(tb.cols()), 0.0);

  const double floor = 2e-9 * std::max(1.0, refined.value);
  const double margin = 0.25 * curv * theta * theta + floor;

  RadiusEstimate est;
  est.raw = refined.value;
  est.value = refined.value - margin;
  est.direction_count = N;
  est.tolerance = curv * theta * theta + floor;
  est.worst_direction = to_complex(refined.direction);
  if (est.value <= 0.0) throw ZeroNotInImage("certified inner radius vanished");
  return est;
}

RadiusEstimate outer_radius(const MapChain& chain, const ConvexDomain& domain,
                            const RadiusOptions& opts) {
  const int n = domain.dim();
  const std::size_t N = opts.directions ? opts.directions : 100000;
  if (!domain.bounded())
    throw UnboundedDomain("outer radius needs a bounded domain");

  const auto dirs =
      qmc::sphere_directions(2 * n, N, opts.seed, qmc::mix64(0x07ull));
  auto boundary_point = [&](const RVec& d) {
    const CVec w = to_complex(d);
    return CVec(domain.witness() + domain.ray_exit(domain.witness(), w) * w);
  };
  // legitimate chains keep denominators above ~0.3 on the closure, so a
  // scale-aware threshold separates real poles from roundoff
  const double clearance_tol = 1e-6 * (1.0 + domain.scale());
  auto image_norm = [&](const RVec& d) {
    double clearance = 0.0;
    CVec w;
    try {
      w = chain.apply_tracked(boundary_point(d), clearance);
    } catch (const SingularPoint&) {
      throw SingularOnClosure("chain singular on the domain closure");
    }
    if (clearance < clearance_tol)
      throw SingularOnClosure("singular-set clearance vanishes on the closure");
    return w.norm();
  };

  std::vector<double> norms(N);
  parallel_for(N, [&](std::size_t i) { norms[i] = image_norm(dirs[i]); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (norms[i] > norms[best]) best = i;

  const double theta = qmc::angular_gap(2 * n, N);
  const auto refined = refine_direction(image_norm, dirs[best], norms[best],
                                        theta, /*minimize=*/false);

  // local Lipschitz rate at the refined maximizer; near a smooth maximum it
  // decays like curvature * step, which keeps the inflation tight
  const double h = theta / 4.0;
  const RMat tb = tangent_basis(refined.direction);
  double lip = 0.0;
  for (Eigen::Index j = 0; j < tb.cols(); ++j) {
    const double fp = image_norm((refined.direction + h * tb.col(j)).normalized());
    const double fm = image_norm((refined.direction - h * tb.col(j)).normalized());
    lip = std::max({lip, std::abs(fp - refined.value) / h,
                    std::abs(fm - refined.value) / h});
  }

  const double floor = 2e-9 * std::max(1.0, refined.value);
  RadiusEstimate est;
  est.raw = refined.value;
  est.value = refined.value + lip * theta + floor;
  est.direction_count = N;
  est.tolerance = lip * theta + floor;
  est.worst_direction = to_complex(refined.direction);
  return est;
}

SelfcheckReport chain_selfcheck(const MapChain& chain, const ConvexDomain& domain,
                                std::size_t points_per_atom, std::uint64_t seed) {
  SelfcheckReport rep;
  const int n = domain.dim();
  qmc::Lattice lat(2 * n, seed, qmc::mix64(0x5e1full));
  std::vector<CVec> pts;
  for (std::size_t i = 0; pts.size() < points_per_atom && i < 8 * points_per_atom;
       ++i) {
    const CVec w = to_complex(qmc::sphere_direction(lat, i));
    const double t = domain.ray_exit(domain.witness(), w);
    if (!std::isfinite(t)) continue;
    const double s = 0.2 + 0.75 * double(i % 97) / 96.0;
    pts.push_back(domain.witness() + s * t * w);
  }

  for (const auto& z : pts) {
    try {
      const CVec back = chain.invert(chain.apply(z));
      rep.max_roundtrip = std::max(rep.max_roundtrip, (back - z).norm());
    } catch (const SingularPoint&) {
      continue;
    }
  }

  // central-difference Cauchy-Riemann residual per atom: holomorphy means
  // d f / d y_k = i * d f / d x_k
  for (std::size_t ai = 0; ai < chain.size(); ++ai) {
    MapChain prefix(std::vector<MapAtom>(chain.atoms().begin(),
                                         chain.atoms().begin() + ai));
    const MapAtom& atom = chain.atoms()[ai];
    std::size_t used = 0;
    for (const auto& z : pts) {
      if (used >= points_per_atom) break;
      CVec x;
      try {
        x = prefix.apply(z);
      } catch (const SingularPoint&) {
        continue;
      }
      const double h = 1e-5 * std::max(1.0, x.norm());
      bool bad = false;
      double worst = 0.0;
      for (int k = 0; k < x.size() && !bad; ++k) {
        CVec xp = x, xm = x, yp = x, ym = x;
        xp[k] += h;
        xm[k] -= h;
        yp[k] += cplx(0, h);
        ym[k] -= cplx(0, h);
        try {
          const CVec dx = (apply_atom(atom, xp) - apply_atom(atom, xm)) / (2 * h);
          const CVec dy = (apply_atom(atom, yp) - apply_atom(atom, ym)) / (2 * h);
          worst = std::max(worst, (dy - cplx(0, 1) * dx).norm());
        } catch (const SingularPoint&) {
          bad = true;
        }
      }
      if (!bad) {
        rep.max_cauchy_riemann = std::max(rep.max_cauchy_riemann, worst);
        ++used;
      }
    }
    rep.points += used;
  }

  rep.ok = rep.max_roundtrip <= 1e-9 * chain.condition() &&
           rep.max_cauchy_riemann < 1e-6;
  return rep;
}

}  // namespace squeeze
