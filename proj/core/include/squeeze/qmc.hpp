#ifndef SQUEEZE_QMC_HPP
#define SQUEEZE_QMC_HPP

#include <cstdint>
#include <vector>

#include "squeeze/types.hpp"

namespace squeeze::qmc {

/// splitmix64; used only to derive deterministic sequence offsets from seeds
std::uint64_t mix64(std::uint64_t x);

// Additive-recurrence (Kronecker) sequence in [0,1)^d based on the
// generalized golden ratio, offset per (seed, stream).  Deterministic,
// low-discrepancy, dimension-capped at 2*kMaxDim.
class Lattice {
 public:
  Lattice(int dim, std::uint64_t seed, std::uint64_t stream = 0);
  /// i-th point, components in [0,1)
  std::vector<double> point(std::uint64_t i) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  std::vector<double> alpha_;
  std::vector<double> offset_;
};

/// i-th quasi-uniform direction on the unit sphere of R^{dim_real}
/// (Box-Muller through a Kronecker lattice, then normalized)
RVec sphere_direction(const Lattice& lat, std::uint64_t i);

/// deterministic batch of n sphere directions
std::vector<RVec> sphere_directions(int dim_real, std::size_t n,
                                    std::uint64_t seed, std::uint64_t stream = 0);

/// quasi-uniform points of the unit ball in R^{dim_real} (radius by u^(1/d) law)
std::vector<RVec> ball_points(int dim_real, std::size_t n,
                              std::uint64_t seed, std::uint64_t stream = 0);

/// equal-area mean angular gap for n directions on S^{dim_real - 1};
/// the directional-slack estimates in the radius reports are based on it
double angular_gap(int dim_real, std::size_t n);

}  // namespace squeeze::qmc

#endif
