#include "squeeze/qmc.hpp"

#include <cmath>

#include "squeeze/errors.hpp"

namespace squeeze::qmc {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

double frac(double x) { return x - std::floor(x); }

/// positive root of x^(d+1) = x + 1 (phi_1 = golden ratio)
double harmonious(int d) {
  double x = 1.5;
  for (int it = 0; it < 64; ++it) {
    // Newton on f = x^(d+1) - x - 1
    const double p = std::pow(x, d);
    x -= (p * x - x - 1.0) / ((d + 1) * p - 1.0);
  }
  return x;
}

}  // namespace

Lattice::Lattice(int dim, std::uint64_t seed, std::uint64_t stream) : dim_(dim) {
  if (dim < 1 || dim > 2 * kMaxDim + 2)
    throw InvalidInput("lattice dimension out of range");
  const double phi = harmonious(dim);
  alpha_.resize(dim);
  offset_.resize(dim);
  double a = 1.0;
  for (int k = 0; k < dim; ++k) {
    a /= phi;
    alpha_[k] = a;
    // deterministic per-(seed,stream,coordinate) shift
    const std::uint64_t h = mix64(seed ^ mix64(stream ^ (std::uint64_t(k) + 1)));
    offset_[k] = double(h >> 11) * 0x1.0p-53;
  }
}

std::vector<double> Lattice::point(std::uint64_t i) const {
  std::vector<double> u(dim_);
  for (int k = 0; k < dim_; ++k)
    u[k] = frac(offset_[k] + double(i + 1) * alpha_[k]);
  return u;
}

RVec sphere_direction(const Lattice& lat, std::uint64_t i) {
  const int d = lat.dim();
  const auto u = lat.point(i);
  RVec g(d);
  for (int k = 0; k < d; k += 2) {
    const double u1 = std::max(u[k], 1e-16);
    const double u2 = (k + 1 < d) ? u[k + 1] : frac(u[k] * 977.0 + 0.37);
    const double r = std::sqrt(-2.0 * std::log(u1));
    g[k] = r * std::cos(2.0 * M_PI * u2);
    if (k + 1 < d) g[k + 1] = r * std::sin(2.0 * M_PI * u2);
  }
  const double n = g.norm();
  if (n < 1e-14) {  // essentially impossible; fall back to a fixed axis
    g.setZero();
    g[0] = 1.0;
    return g;
  }
  return g / n;
}

std::vector<RVec> sphere_directions(int dim_real, std::size_t n,
                                    std::uint64_t seed, std::uint64_t stream) {
  Lattice lat(dim_real, seed, stream);
  std::vector<RVec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sphere_direction(lat, i));
  return out;
}

std::vector<RVec> ball_points(int dim_real, std::size_t n,
                              std::uint64_t seed, std::uint64_t stream) {
  Lattice dir(dim_real, seed, stream);
  Lattice rad(1, seed, stream + 0x5151ULL);
  std::vector<RVec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::pow(rad.point(i)[0], 1.0 / dim_real);
    out.push_back(r * sphere_direction(dir, i));
  }
  return out;
}

double angular_gap(int dim_real, std::size_t n) {
  const int s = dim_real - 1;  // sphere dimension
  if (s <= 0) return 0.0;
  if (s == 1) return 2.0 * M_PI / double(n);
  // area(S^s) = 2 pi^((s+1)/2) / Gamma((s+1)/2); cap ~ vol(B^s) theta^s
  const double area = 2.0 * std::pow(M_PI, 0.5 * (s + 1)) / std::tgamma(0.5 * (s + 1));
  const double vball = std::pow(M_PI, 0.5 * s) / std::tgamma(0.5 * s + 1.0);
  return std::pow(area / (double(n) * vball), 1.0 / s);
}

}  // namespace squeeze::qmc
