#pragma once

#include <gmpxx.h>

#include <vector>

namespace sphcode {

using IntVector = std::vector<mpz_class>;

/// LLL reduction in exact integer arithmetic with Lovasz parameter
/// delta = delta_num / delta_den (default 0.99). Rows are basis vectors.
/// Throws DependentBasis when the rows are linearly dependent.
std::vector<IntVector> lattice_reduce(std::vector<IntVector> basis, long delta_num = 99, long delta_den = 100);

mpz_class dot(const IntVector& a, const IntVector& b);

}  // namespace sphcode
