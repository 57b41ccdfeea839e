#include "sphcode/kernels.hpp"

#include <omp.h>

#include "sphcode/errors.hpp"

namespace sphcode::kernels {

namespace {

Vec3 diff(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

BigReal coincide_tol2(const PointSet& p) {
  BigReal t = half_precision_tol(p.digits());
  return t * t;
}

BigReal checked_d2(const Vec3& r, const BigReal& tol2, std::size_t i, std::size_t j) {
  BigReal d2 = norm2(r);
  if (d2 <= tol2) {
    throw CoincidentPoints("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }
  return d2;
}

bool use_threads(const PointSet& p) { return p.size() >= kParallelThreshold; }

// block = grad * I + curv * r r^T, written into a 3x3 scratch
void pair_block(const Vec3& r, const PairCoefficients& c, BigReal out[3][3]) {
  const BigReal* rv[3] = {&r.x, &r.y, &r.z};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      out[a][b] = c.curv * *rv[a] * *rv[b];
      if (a == b) out[a][b] += c.grad;
    }
  }
}

}  // namespace

PairCoefficients pair_coefficients(const BigReal& d2, const Potential& pot, bool want_curv) {
  const int digits = d2.digits();
  PairCoefficients c;
  BigReal inv2 = BigReal::one(digits) / d2;
  if (pot.is_log()) {
    c.phi = -log(d2) / 2L;
    c.grad = -inv2;
    c.curv = want_curv ? 2L * inv2 * inv2 : BigReal::zero(digits);
    return c;
  }
  const long s = pot.s;
  // d^-s from powers of 1/d^2, with one square root for odd s
  BigReal ds = pow(inv2, s / 2);
  if (s % 2 != 0) ds *= sqrt(inv2);
  c.phi = ds;
  BigReal ds2 = ds * inv2;
  c.grad = -s * ds2;
  c.curv = want_curv ? (s * (s + 2)) * (ds2 * inv2) : BigReal::zero(digits);
  return c;
}

BigReal energy_serial(const PointSet& p, const Potential& pot) {
  const std::size_t n = p.size();
  const BigReal tol2 = coincide_tol2(p);
  BigReal total = BigReal::zero(p.empty() ? BigReal::kDefaultDigits : p.digits());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      BigReal d2 = checked_d2(diff(p[i], p[j]), tol2, i, j);
      total += pair_coefficients(d2, pot, false).phi;
    }
  }
  return total;
}

BigReal energy_parallel(const PointSet& p, const Potential& pot) {
  const std::size_t n = p.size();
  if (n == 0) return BigReal::zero(BigReal::kDefaultDigits);
  const int digits = p.digits();
  const BigReal tol2 = coincide_tol2(p);
  std::vector<BigReal> rows(n, BigReal::zero(digits));
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) if (use_threads(p))
  for (std::size_t i = 0; i < n; ++i) {
    try {
      BigReal acc = BigReal::zero(digits);
      for (std::size_t j = i + 1; j < n; ++j) {
        BigReal d2 = checked_d2(diff(p[i], p[j]), tol2, i, j);
        acc += pair_coefficients(d2, pot, false).phi;
      }
      rows[i] = std::move(acc);
    } catch (...) {
#pragma omp critical(sphcode_kernel_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  BigReal total = BigReal::zero(digits);
  for (const auto& r : rows) total += r;
  return total;
}

std::vector<Vec3> forces_serial(const PointSet& p, const Potential& pot) {
  const std::size_t n = p.size();
  const int digits = n ? p.digits() : BigReal::kDefaultDigits;
  const BigReal tol2 = coincide_tol2(p);
  std::vector<Vec3> out(n, Vec3::zero(digits));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec3 r = diff(p[i], p[j]);
      BigReal d2 = checked_d2(r, tol2, i, j);
      Vec3 f = r * -pair_coefficients(d2, pot, false).grad;
      out[i] += f;
      out[j] -= f;
    }
  }
  return out;
}

std::vector<Vec3> forces_parallel(const PointSet& p, const Potential& pot) {
  const std::size_t n = p.size();
  const int digits = n ? p.digits() : BigReal::kDefaultDigits;
  const BigReal tol2 = coincide_tol2(p);
  std::vector<Vec3> out(n, Vec3::zero(digits));
  std::exception_ptr err;
#pragma omp parallel for schedule(static) if (use_threads(p))
  for (std::size_t i = 0; i < n; ++i) {
    try {
      Vec3 acc = Vec3::zero(digits);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Vec3 r = diff(p[i], p[j]);
        BigReal d2 = checked_d2(r, tol2, i, j);
        acc -= r * pair_coefficients(d2, pot, false).grad;
      }
      out[i] = std::move(acc);
    } catch (...) {
#pragma omp critical(sphcode_kernel_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

std::vector<BigReal> ambient_hessian_serial(const PointSet& p, const Potential& pot) {
  const std::size_t n = p.size();
  const std::size_t m = 3 * n;
  const int digits = n ? p.digits() : BigReal::kDefaultDigits;
  const BigReal tol2 = coincide_tol2(p);
  std::vector<BigReal> h(m * m, BigReal::zero(digits));
  BigReal blk[3][3];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec3 r = diff(p[i], p[j]);
      BigReal d2 = checked_d2(r, tol2, i, j);
      pair_block(r, pair_coefficients(d2, pot, true), blk);
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          h[(3 * i + a) * m + 3 * i + b] += blk[a][b];
          h[(3 * j + a) * m + 3 * j + b] += blk[a][b];
          h[(3 * i + a) * m + 3 * j + b] -= blk[a][b];
          h[(3 * j + a) * m + 3 * i + b] -= blk[a][b];
        }
      }
    }
  }
  return h;
}

std::vector<BigReal> ambient_hessian_parallel(const PointSet& p, const Potential& pot) {
  const std::size_t n = p.size();
  const std::size_t m = 3 * n;
  const int digits = n ? p.digits() : BigReal::kDefaultDigits;
  const BigReal tol2 = coincide_tol2(p);
  std::vector<BigReal> h(m * m, BigReal::zero(digits));
  std::exception_ptr err;
#pragma omp parallel for schedule(static) if (use_threads(p))
  for (std::size_t i = 0; i < n; ++i) {
    try {
      BigReal blk[3][3];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Vec3 r = diff(p[i], p[j]);
        BigReal d2 = checked_d2(r, tol2, i, j);
        pair_block(r, pair_coefficients(d2, pot, true), blk);
        for (std::size_t a = 0; a < 3; ++a) {
          for (std::size_t b = 0; b < 3; ++b) {
            h[(3 * i + a) * m + 3 * i + b] += blk[a][b];
            h[(3 * i + a) * m + 3 * j + b] = -blk[a][b];
          }
        }
      }
    } catch (...) {
#pragma omp critical(sphcode_kernel_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return h;
}

}  // namespace sphcode::kernels
