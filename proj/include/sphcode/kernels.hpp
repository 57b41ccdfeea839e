#pragma once

// Pair-sum kernels over a point set. Each kernel has a serial reference and an
// OpenMP version. The parallel versions give every output slot to exactly one
// thread and sum in a fixed order, so their results do not depend on the
// thread count; the serial references use a different (pairwise-symmetric)
// summation order and agree with them to round-off.

#include <vector>

#include "sphcode/big_real.hpp"
#include "sphcode/geometry.hpp"
#include "sphcode/potentials.hpp"

namespace sphcode::kernels {

/// For a pair at squared distance d2 with potential phi(d):
///   phi       the pair energy
///   grad      phi'(d)/d, so that d phi / d x_i = grad * (x_i - x_j)
///   curv      (phi''(d) - phi'(d)/d) / d^2, so that
///             d^2 phi / d x_i^2 = grad * I + curv * r r^T
struct PairCoefficients {
  BigReal phi, grad, curv;
};

PairCoefficients pair_coefficients(const BigReal& d2, const Potential& pot, bool want_curv);

BigReal energy_serial(const PointSet& p, const Potential& pot);
BigReal energy_parallel(const PointSet& p, const Potential& pot);

std::vector<Vec3> forces_serial(const PointSet& p, const Potential& pot);
std::vector<Vec3> forces_parallel(const PointSet& p, const Potential& pot);

/// Ambient 3n x 3n Hessian of the energy, row-major.
std::vector<BigReal> ambient_hessian_serial(const PointSet& p, const Potential& pot);
std::vector<BigReal> ambient_hessian_parallel(const PointSet& p, const Potential& pot);

/// Points below this count run the parallel kernels on one thread.
inline constexpr std::size_t kParallelThreshold = 8;

}  // namespace sphcode::kernels
