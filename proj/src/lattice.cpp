#include "sphcode/lattice.hpp"

#include "sphcode/errors.hpp"

namespace sphcode {

mpz_class dot(const IntVector& a, const IntVector& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Nearest integer to a / b for b > 0.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_class num = 2 * a + b;
  mpz_class den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// Integral LLL: d[i] are the Gram determinants (d[0] = 1) and lam[k][j] the
// integral Gram-Schmidt coefficients, both indexed from 1 as in the usual
// presentation; b is 0-based.
class Reducer {
 public:
  Reducer(std::vector<IntVector> b, long dn, long dd)
      : b_(std::move(b)), n_(b_.size()), d_(n_ + 1), lam_(n_ + 1, IntVector(n_ + 1)), dn_(dn), dd_(dd) {}

  std::vector<IntVector> run() {
    if (n_ == 0) return b_;
    d_[0] = 1;
    std::size_t k = 2, kmax = 1;
    d_[1] = dot(b_[0], b_[0]);
    if (d_[1] == 0) throw DependentBasis("basis vector 1 is zero");
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        for (std::size_t j = 1; j <= k; ++j) {
          mpz_class u = dot(b_[k - 1], b_[j - 1]);
          for (std::size_t i = 1; i < j; ++i) u = (d_[i] * u - lam_[k][i] * lam_[j][i]) / d_[i - 1];
          if (j < k) {
            lam_[k][j] = u;
          } else {
            d_[k] = u;
            if (u == 0) throw DependentBasis("basis vectors are linearly dependent at row " + std::to_string(k));
          }
        }
      }
      red(k, k - 1);
      if (dd_ * d_[k] * d_[k - 2] < dn_ * d_[k - 1] * d_[k - 1] - dd_ * lam_[k][k - 1] * lam_[k][k - 1]) {
        swap(k, kmax);
        k = std::max<std::size_t>(2, k - 1);
      } else {
        for (std::size_t l = k - 1; l-- > 1;) red(k, l);
        ++k;
      }
    }
    return b_;
  }

 private:
  void red(std::size_t k, std::size_t l) {
    mpz_class two_abs = 2 * abs(lam_[k][l]);
    if (two_abs <= d_[l]) return;
    mpz_class q = round_div(lam_[k][l], d_[l]);
    for (std::size_t c = 0; c < b_[k - 1].size(); ++c) b_[k - 1][c] -= q * b_[l - 1][c];
    lam_[k][l] -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lam_[k][i] -= q * lam_[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k - 1], b_[k - 2]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    mpz_class lam = lam_[k][k - 1];
    mpz_class bb = (d_[k - 2] * d_[k] + lam * lam) / d_[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      mpz_class t = lam_[i][k];
      lam_[i][k] = (d_[k] * lam_[i][k - 1] - lam * t) / d_[k - 1];
      lam_[i][k - 1] = (bb * t + lam * lam_[i][k]) / d_[k];
    }
    d_[k - 1] = bb;
  }

  std::vector<IntVector> b_;
  std::size_t n_;
  IntVector d_;
  std::vector<IntVector> lam_;
  long dn_, dd_;
};

}  // namespace

std::vector<IntVector> lattice_reduce(std::vector<IntVector> basis, long delta_num, long delta_den) {
  if (delta_den <= 0 || delta_num * 4 <= delta_den || delta_num > delta_den) {
    throw DomainError("LLL parameter must lie in (1/4, 1]");
  }
  for (std::size_t i = 1; i < basis.size(); ++i) {
    if (basis[i].size() != basis[0].size()) throw SizeMismatch("basis vectors differ in length");
  }
  return Reducer(std::move(basis), delta_num, delta_den).run();
}

}  // namespace sphcode
