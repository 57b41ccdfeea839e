#include "sphcode/verify.hpp"

#include "sphcode/errors.hpp"
#include "sphcode/kernels.hpp"

namespace sphcode {

namespace {

const BigReal& comp(const Vec3& v, int a) { return a == 0 ? v.x : (a == 1 ? v.y : v.z); }

Matrix project(const PointSet& p, const std::vector<BigReal>& amb, const std::vector<Vec3>& f) {
  const std::size_t n = p.size();
  const std::size_t m = 3 * n;
  const int digits = p.digits();
  TangentBasis tb = tangent_basis(p);
  // tangent vectors per (point, direction)
  std::vector<const Vec3*> t(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    t[2 * i] = &tb.t1[i];
    t[2 * i + 1] = &tb.t2[i];
  }
  Matrix h(2 * n, digits);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (int a = 0; a < 2; ++a) {
        // row = t_ia^T A_ij
        Vec3 row = Vec3::zero(digits);
        for (int c = 0; c < 3; ++c) {
          const BigReal& tc = comp(*t[2 * i + a], c);
          const std::size_t r = (3 * i + c) * m + 3 * j;
          row.x += tc * amb[r];
          row.y += tc * amb[r + 1];
          row.z += tc * amb[r + 2];
        }
        for (int b = 0; b < 2; ++b) h(2 * i + a, 2 * j + b) = dot(row, *t[2 * j + b]);
      }
    }
    // chart curvature: -g.x with g = -F
    BigReal corr = dot(f[i], p[i]);
    h(2 * i, 2 * i) += corr;
    h(2 * i + 1, 2 * i + 1) += corr;
  }
  return h;
}

}  // namespace

TangentBasis tangent_basis(const PointSet& p) {
  TangentBasis tb;
  tb.t1.reserve(p.size());
  tb.t2.reserve(p.size());
  for (const auto& x : p) {
    const int digits = x.digits();
    int axis = 0;
    for (int a = 1; a < 3; ++a) {
      if (abs(comp(x, a)) < abs(comp(x, axis))) axis = a;
    }
    Vec3 e = Vec3::zero(digits);
    (axis == 0 ? e.x : axis == 1 ? e.y : e.z) = BigReal::one(digits);
    Vec3 t1 = normalize(e - x * dot(e, x));
    tb.t2.push_back(cross(x, t1));
    tb.t1.push_back(std::move(t1));
  }
  return tb;
}

Matrix hessian(const PointSet& p, const Potential& pot) {
  if (p.empty()) return Matrix(0, BigReal::kDefaultDigits);
  return project(p, kernels::ambient_hessian_parallel(p, pot), kernels::forces_parallel(p, pot));
}

Matrix hessian_serial(const PointSet& p, const Potential& pot) {
  if (p.empty()) return Matrix(0, BigReal::kDefaultDigits);
  return project(p, kernels::ambient_hessian_serial(p, pot), kernels::forces_serial(p, pot));
}

std::vector<BigReal> eigenvalues_sym(const Matrix& m, int digits) { return jacobi_eigenvalues(m, digits); }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Minimum:
      return "Minimum";
    case Verdict::Saddle:
      return "Saddle";
    case Verdict::Degenerate:
      return "Degenerate";
  }
  return "?";
}

long expected_zero_count(const PointSet& p) {
  if (p.size() <= 1) return 0;
  if (p.size() == 2) return 2;
  return 3;
}

HessianReport verify_minimum(const PointSet& p, const Potential& pot, const BigReal& zero_tol) {
  HessianReport rep;
  rep.expected_zeros = expected_zero_count(p);
  if (p.size() <= 1) {
    for (std::size_t i = 0; i < 2 * p.size(); ++i) rep.eigenvalues.push_back(BigReal::zero(p.digits()));
    rep.zero_count = static_cast<long>(rep.eigenvalues.size());
    return rep;
  }
  BigReal res = residual(p, pot);
  if (!(res < zero_tol)) {
    throw NotCritical("residual " + res.to_string(6) + " is not below " + zero_tol.to_string(3));
  }
  rep.eigenvalues = eigenvalues_sym(hessian(p, pot), p.digits());
  bool negative = false;
  for (const auto& ev : rep.eigenvalues) {
    if (abs(ev) < zero_tol) ++rep.zero_count;
    if (ev < -zero_tol) negative = true;
  }
  if (negative) {
    rep.verdict = Verdict::Saddle;
  } else if (rep.zero_count == rep.expected_zeros) {
    rep.verdict = Verdict::Minimum;
  }
  return rep;
}

HessianReport verify_minimum(const PointSet& p, const Potential& pot) {
  const int digits = p.empty() ? BigReal::kDefaultDigits : p.digits();
  return verify_minimum(p, pot, half_precision_tol(digits));
}

}  // namespace sphcode
