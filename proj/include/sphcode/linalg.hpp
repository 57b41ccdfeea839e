#pragma once

#include <cstddef>
#include <vector>

#include "sphcode/big_real.hpp"

namespace sphcode {

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t n, int digits) : n_(n), a_(n * n, BigReal::zero(digits)) {}
  Matrix(std::size_t n, std::vector<BigReal> entries) : n_(n), a_(std::move(entries)) {}

  std::size_t size() const { return n_; }
  BigReal& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const BigReal& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<BigReal>& entries() const { return a_; }

  BigReal frobenius() const;
  /// max |A_ij - A_ji|
  BigReal asymmetry() const;

 private:
  std::size_t n_ = 0;
  std::vector<BigReal> a_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws SingularJacobian when a pivot magnitude falls below pivot_tol.
std::vector<BigReal> solve_linear(Matrix a, std::vector<BigReal> b, const BigReal& pivot_tol);

/// Solves A x = b for symmetric A by Cholesky factorization. Returns an empty
/// vector when A is not positive definite.
std::vector<BigReal> solve_cholesky(Matrix a, std::vector<BigReal> b);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Sweeps stop once the off-diagonal Frobenius norm is below
/// 10^(10-p) * max(1, |M|). Throws NonSymmetric.
std::vector<BigReal> jacobi_eigenvalues(Matrix m, int digits);

}  // namespace sphcode
