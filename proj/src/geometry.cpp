#include "sphcode/geometry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "sphcode/errors.hpp"

namespace sphcode {

int Vec3::digits() const { return std::min({x.digits(), y.digits(), z.digits()}); }

Vec3& Vec3::operator+=(const Vec3& o) {
  x += o.x;
  y += o.y;
  z += o.z;
  return *this;
}

Vec3& Vec3::operator-=(const Vec3& o) {
  x -= o.x;
  y -= o.y;
  z -= o.z;
  return *this;
}

Vec3& Vec3::operator*=(const BigReal& s) {
  x *= s;
  y *= s;
  z *= s;
  return *this;
}

BigReal dot(const Vec3& a, const Vec3& b) {
  BigReal r = a.x * b.x;
  r += a.y * b.y;
  r += a.z * b.z;
  return r;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

BigReal norm2(const Vec3& a) { return dot(a, a); }
BigReal norm(const Vec3& a) { return sqrt(norm2(a)); }

BigReal half_precision_tol(int digits) { return BigReal::pow10(-(digits / 2), digits); }
BigReal roundoff_tol(int digits) { return BigReal::pow10(2 - digits, digits); }

Point3 normalize(const Vec3& v) {
  const BigReal len = norm(v);
  if (len <= half_precision_tol(v.digits())) throw ZeroVector("cannot normalize a vector of length " + len.to_string(6));
  const BigReal inv = 1L / len;
  return v * inv;
}

BigReal pair_distance(const Point3& p, const Point3& q) { return norm(p - q); }

PointSet::PointSet(std::vector<Point3> points) : points_(std::move(points)) {
  const int p = digits();
  const BigReal on_sphere = roundoff_tol(p);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (abs(norm2(points_[i]) - 1L) >= on_sphere) {
      throw OffSphere("point " + std::to_string(i + 1) + " has norm " + norm(points_[i]).to_string(12));
    }
  }
  const BigReal coincide = half_precision_tol(p);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (pair_distance(points_[i], points_[j]) < coincide) {
        throw CoincidentPoints("points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
      }
    }
  }
}

PointSet PointSet::trusted(std::vector<Point3> points) {
  PointSet s;
  s.points_ = std::move(points);
  return s;
}

int PointSet::digits() const {
  int d = BigReal::kDefaultDigits;
  bool first = true;
  for (const auto& pt : points_) {
    d = first ? pt.digits() : std::min(d, pt.digits());
    first = false;
  }
  return d;
}

PointSet with_precision(const PointSet& p, int digits) {
  std::vector<Point3> out;
  out.reserve(p.size());
  for (const auto& v : p) {
    out.push_back({with_precision(v.x, digits), with_precision(v.y, digits), with_precision(v.z, digits)});
  }
  return PointSet::trusted(std::move(out));
}

GramMatrix gram_matrix(const PointSet& p) {
  const std::size_t n = p.size();
  std::vector<BigReal> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      entries[i * n + j] = dot(p[i], p[j]);
      if (j != i) entries[j * n + i] = entries[i * n + j];
    }
  }
  return GramMatrix(n, std::move(entries));
}

std::vector<long> cluster_sizes(std::vector<BigReal> values, const BigReal& tol) {
  std::vector<long> sizes;
  if (values.empty()) return sizes;
  std::sort(values.begin(), values.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
  long run = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] < tol) {
      ++run;
    } else {
      sizes.push_back(run);
      run = 1;
    }
  }
  sizes.push_back(run);
  return sizes;
}

std::string GramSignature::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) os << ", ";
    os << '[' << groups[i].first << ", " << groups[i].second << ']';
  }
  os << ']';
  return os.str();
}

GramSignature gram_signature(const GramMatrix& g, const BigReal& tol) {
  std::vector<long> sizes = cluster_sizes(g.entries(), tol);
  std::sort(sizes.begin(), sizes.end());
  GramSignature sig;
  for (long s : sizes) {
    if (!sig.groups.empty() && sig.groups.back().first == s) {
      ++sig.groups.back().second;
    } else {
      sig.groups.emplace_back(s, 1);
    }
  }
  return sig;
}

namespace {

std::vector<BigReal> sorted_row(const GramMatrix& g, std::size_t i) {
  std::vector<BigReal> row;
  row.reserve(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) row.push_back(g.at(i, j));
  std::sort(row.begin(), row.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
  return row;
}

bool close_seq(const std::vector<BigReal>& a, const std::vector<BigReal>& b, const BigReal& tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (abs(a[i] - b[i]) >= tol) return false;
  }
  return true;
}

}  // namespace

IsometryResult isometric(const PointSet& p, const PointSet& q, const BigReal& tol) {
  if (p.size() != q.size()) {
    throw SizeMismatch("point sets have " + std::to_string(p.size()) + " and " + std::to_string(q.size()) + " points");
  }
  const std::size_t n = p.size();
  const GramMatrix gp = gram_matrix(p);
  const GramMatrix gq = gram_matrix(q);

  auto sorted_all = [](const GramMatrix& g) {
    std::vector<BigReal> v = g.entries();
    std::sort(v.begin(), v.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
    return v;
  };
  if (!close_seq(sorted_all(gp), sorted_all(gq), tol)) return {Isometry::Mismatch, true};

  std::vector<std::vector<BigReal>> rows_p, rows_q;
  for (std::size_t i = 0; i < n; ++i) {
    rows_p.push_back(sorted_row(gp, i));
    rows_q.push_back(sorted_row(gq, i));
  }
  // compatible[i][k]: row i of P has the same profile as row k of Q.
  std::vector<std::vector<char>> compatible(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
      compatible[i][k] = close_seq(rows_p[i], rows_q[k], tol) ? 1 : 0;
      any = any || compatible[i][k];
    }
    if (!any) return {Isometry::Mismatch, true};
  }

  if (n > 12) return {Isometry::Match, false};

  std::vector<int> assigned(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k] || !compatible[i][k]) continue;
      bool ok = true;
      for (std::size_t m = 0; m < i && ok; ++m) {
        ok = abs(gp.at(i, m) - gq.at(k, static_cast<std::size_t>(assigned[m]))) < tol;
      }
      if (!ok) continue;
      assigned[i] = static_cast<int>(k);
      used[k] = 1;
      if (extend(i + 1)) return true;
      used[k] = 0;
    }
    assigned[i] = -1;
    return false;
  };
  return extend(0) ? IsometryResult{Isometry::Match, true} : IsometryResult{Isometry::Mismatch, true};
}

Vec3 transform(const Mat3& r, const Vec3& v) {
  return {r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z, r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
          r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z};
}

PointSet transform(const Mat3& r, const PointSet& p) {
  std::vector<Point3> out;
  out.reserve(p.size());
  for (const auto& v : p) out.push_back(transform(r, v));
  return PointSet::trusted(std::move(out));
}

Mat3 axis_angle_rotation(const Vec3& axis, const BigReal& angle) {
  const Vec3 k = normalize(axis);
  const BigReal c = cos(angle), s = sin(angle);
  const BigReal t = 1L - c;
  const std::array<const BigReal*, 3> kv{&k.x, &k.y, &k.z};
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r[i][j] = t * *kv[i] * *kv[j];
      if (i == j) r[i][j] += c;
    }
  }
  r[0][1] -= s * k.z;
  r[0][2] += s * k.y;
  r[1][0] += s * k.z;
  r[1][2] -= s * k.x;
  r[2][0] -= s * k.y;
  r[2][1] += s * k.x;
  return r;
}

Mat3 rotation_to_z(const Point3& normal) {
  const int d = normal.digits();
  const Vec3 z = Vec3::of(0, 0, 1, d);
  const BigReal c = dot(normal, z);
  const Vec3 v = cross(normal, z);
  Mat3 r;
  if (1L + c < half_precision_tol(d)) {
    // Antipodal: half turn about the x axis.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = BigReal(i == j ? (i == 0 ? 1 : -1) : 0, d);
    return r;
  }
  // R = c I + [v]x + v v^T / (1 + c)
  const std::array<const BigReal*, 3> vv{&v.x, &v.y, &v.z};
  const BigReal f = 1L / (1L + c);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r[i][j] = *vv[i] * *vv[j] * f;
      if (i == j) r[i][j] += c;
    }
  }
  r[0][1] -= v.z;
  r[0][2] += v.y;
  r[1][0] += v.z;
  r[1][2] -= v.x;
  r[2][0] -= v.y;
  r[2][1] += v.x;
  return r;
}

PointSet rotate_to_axis(const PointSet& p, const Point3& normal) { return transform(rotation_to_z(normal), p); }

Mat3 random_rotation(Rng& rng, int digits) {
  // Uniform unit quaternion by rejection from the 4-ball.
  double q[4];
  double n2 = 0;
  do {
    n2 = 0;
    for (double& c : q) {
      c = rng.next_uniform_double();
      n2 += c * c;
    }
  } while (n2 > 1.0 || n2 < 1e-4);
  std::array<BigReal, 4> u;
  BigReal len2 = BigReal::zero(digits);
  for (int i = 0; i < 4; ++i) {
    u[i] = BigReal(q[i], digits);
    len2 += u[i] * u[i];
  }
  const BigReal inv = 1L / sqrt(len2);
  for (auto& c : u) c *= inv;
  const BigReal &w = u[0], &x = u[1], &y = u[2], &z = u[3];
  Mat3 r;
  r[0][0] = 1L - 2L * (y * y + z * z);
  r[0][1] = 2L * (x * y - z * w);
  r[0][2] = 2L * (x * z + y * w);
  r[1][0] = 2L * (x * y + z * w);
  r[1][1] = 1L - 2L * (x * x + z * z);
  r[1][2] = 2L * (y * z - x * w);
  r[2][0] = 2L * (x * z - y * w);
  r[2][1] = 2L * (y * z + x * w);
  r[2][2] = 1L - 2L * (x * x + y * y);
  return r;
}

Point3 random_point(Rng& rng, int digits) {
  for (;;) {
    const double a = rng.next_uniform_double(), b = rng.next_uniform_double(), c = rng.next_uniform_double();
    const double r2 = a * a + b * b + c * c;
    if (r2 > 1.0 || r2 < 1e-6) continue;
    return normalize(Vec3::of(a, b, c, digits));
  }
}

PointSet random_point_set(std::size_t n, Rng& rng, int digits) {
  std::vector<Point3> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, digits));
  return PointSet(std::move(pts));
}

}  // namespace sphcode
