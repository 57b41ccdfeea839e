#pragma once

#include <vector>

#include "sphcode/big_real.hpp"
#include "sphcode/geometry.hpp"
#include "sphcode/linalg.hpp"
#include "sphcode/potentials.hpp"

namespace sphcode {

struct TangentBasis {
  std::vector<Vec3> t1, t2;
};

/// Per point: t1 from the coordinate axis least aligned with x (Gram-Schmidt),
/// t2 = x cross t1.
TangentBasis tangent_basis(const PointSet& p);

/// 2n x 2n Hessian of the energy on the chart u -> normalize(x + u1 t1 + u2 t2).
/// Index 2i+a is tangent direction a of point i.
Matrix hessian(const PointSet& p, const Potential& pot);
/// Same, assembled from the serial reference kernel.
Matrix hessian_serial(const PointSet& p, const Potential& pot);

/// Ascending eigenvalues of a symmetric matrix. Throws NonSymmetric.
std::vector<BigReal> eigenvalues_sym(const Matrix& m, int digits);

enum class Verdict { Minimum, Saddle, Degenerate };
const char* to_string(Verdict v);

struct HessianReport {
  std::vector<BigReal> eigenvalues;
  long zero_count = 0;
  long expected_zeros = 0;
  Verdict verdict = Verdict::Degenerate;
};

/// Rotational null-space dimension: 3 generically, 2 for two points, 0 below.
long expected_zero_count(const PointSet& p);

/// Throws NotCritical when the residual is not below zero_tol.
HessianReport verify_minimum(const PointSet& p, const Potential& pot, const BigReal& zero_tol);
/// zero_tol = 10^(-p/2).
HessianReport verify_minimum(const PointSet& p, const Potential& pot);

}  // namespace sphcode
