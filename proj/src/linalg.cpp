#include "sphcode/linalg.hpp"

#include <algorithm>

#include "sphcode/errors.hpp"

namespace sphcode {

BigReal Matrix::frobenius() const {
  BigReal s = BigReal::zero(a_.empty() ? BigReal::kDefaultDigits : a_[0].digits());
  for (const auto& v : a_) s += v * v;
  return sqrt(s);
}

BigReal Matrix::asymmetry() const {
  BigReal worst = BigReal::zero(a_.empty() ? BigReal::kDefaultDigits : a_[0].digits());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      BigReal d = abs((*this)(i, j) - (*this)(j, i));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

std::vector<BigReal> solve_linear(Matrix a, std::vector<BigReal> b, const BigReal& pivot_tol) {
  const std::size_t n = a.size();
  if (b.size() != n) throw SizeMismatch("right-hand side length does not match the matrix");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    BigReal best = abs(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal v = abs(a(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < pivot_tol) {
      throw SingularJacobian("pivot " + best.to_string(6) + " in column " + std::to_string(k) + " below " +
                             pivot_tol.to_string(3));
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a(r, k).is_zero()) continue;
      BigReal f = a(r, k) / a(k, k);
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<BigReal> x(n);
  for (std::size_t k = n; k-- > 0;) {
    BigReal s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a(k, c) * x[c];
    x[k] = s / a(k, k);
  }
  return x;
}

std::vector<BigReal> solve_cholesky(Matrix a, std::vector<BigReal> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw SizeMismatch("right-hand side length does not match the matrix");
  // lower factor overwrites the lower triangle of a
  for (std::size_t j = 0; j < n; ++j) {
    BigReal d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d.sign() > 0)) return {};
    a(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      BigReal s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / a(j, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= a(i, k) * b[k];
    b[i] /= a(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= a(k, i) * b[k];
    b[i] /= a(i, i);
  }
  return b;
}

std::vector<BigReal> jacobi_eigenvalues(Matrix m, int digits) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  BigReal scale = max(BigReal::one(digits), m.frobenius());
  if (m.asymmetry() > BigReal::pow10(5 - digits, digits) * scale) {
    throw NonSymmetric("matrix asymmetry " + m.asymmetry().to_string(6) + " exceeds tolerance");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      BigReal avg = (m(i, j) + m(j, i)) / 2L;
      m(i, j) = avg;
      m(j, i) = avg;
    }
  }
  const BigReal stop = BigReal::pow10(10 - digits, digits) * scale;
  auto off_norm = [&] {
    BigReal s = BigReal::zero(digits);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2L * m(i, j) * m(i, j);
    }
    return sqrt(s);
  };
  const BigReal one = BigReal::one(digits);
  for (int sweep = 0; sweep < 100 && off_norm() >= stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (m(p, q).is_zero()) continue;
        BigReal apq = m(p, q);
        BigReal theta = (m(q, q) - m(p, p)) / (2L * apq);
        BigReal t = one / (abs(theta) + sqrt(theta * theta + 1L));
        if (theta.sign() < 0) t = -t;
        BigReal c = one / sqrt(t * t + 1L);
        BigReal s = t * c;
        BigReal tau = s / (c + 1L);
        m(p, p) -= t * apq;
        m(q, q) += t * apq;
        m(p, q) = BigReal::zero(digits);
        m(q, p) = BigReal::zero(digits);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          BigReal g = m(r, p);
          BigReal h = m(r, q);
          BigReal np = g - s * (h + g * tau);
          BigReal nq = h + s * (g - h * tau);
          m(r, p) = np;
          m(p, r) = np;
          m(r, q) = nq;
          m(q, r) = nq;
        }
      }
    }
  }
  std::vector<BigReal> ev;
  ev.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ev.push_back(m(i, i));
  std::sort(ev.begin(), ev.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
  return ev;
}

}  // namespace sphcode
