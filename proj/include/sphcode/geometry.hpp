#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sphcode/big_real.hpp"
#include "sphcode/rng.hpp"

namespace sphcode {

struct Vec3 {
  BigReal x, y, z;

  Vec3() = default;
  Vec3(BigReal x_, BigReal y_, BigReal z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
  static Vec3 of(double x, double y, double z, int digits) {
    return {BigReal(x, digits), BigReal(y, digits), BigReal(z, digits)};
  }
  static Vec3 zero(int digits) { return {BigReal::zero(digits), BigReal::zero(digits), BigReal::zero(digits)}; }

  int digits() const;

  Vec3& operator+=(const Vec3& o);
  Vec3& operator-=(const Vec3& o);
  Vec3& operator*=(const BigReal& s);
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(Vec3 a, const BigReal& s) { return a *= s; }
  friend Vec3 operator*(const BigReal& s, Vec3 a) { return a *= s; }
  Vec3 operator-() const { return {-x, -y, -z}; }
};

/// A point of the unit sphere. PointSet enforces the on-sphere invariant.
using Point3 = Vec3;

BigReal dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
BigReal norm2(const Vec3& a);
BigReal norm(const Vec3& a);

/// 10^(-p/2): coincidence, zero-vector and clustering threshold at precision p.
BigReal half_precision_tol(int digits);
/// 10^(2-p): on-sphere and round-off threshold at precision p.
BigReal roundoff_tol(int digits);

/// Unit vector along v. Throws ZeroVector when |v| <= 10^(-p/2).
Point3 normalize(const Vec3& v);

BigReal pair_distance(const Point3& p, const Point3& q);

/// Ordered, validated set of points on S^2.
class PointSet {
 public:
  PointSet() = default;
  /// Throws OffSphere or CoincidentPoints when an invariant fails.
  explicit PointSet(std::vector<Point3> points);
  /// Skips validation; used by kernels that re-normalize every point.
  static PointSet trusted(std::vector<Point3> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point3& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point3>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  /// Smallest coordinate precision.
  int digits() const;

 private:
  std::vector<Point3> points_;
};

/// Returns the point set re-expressed at `digits`.
PointSet with_precision(const PointSet& p, int digits);

class GramMatrix {
 public:
  GramMatrix(std::size_t n, std::vector<BigReal> entries) : n_(n), entries_(std::move(entries)) {}
  std::size_t size() const { return n_; }
  const BigReal& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<BigReal>& entries() const { return entries_; }

 private:
  std::size_t n_;
  std::vector<BigReal> entries_;
};

GramMatrix gram_matrix(const PointSet& p);

/// Histogram of equal-value classes among the n^2 Gram entries:
/// [class_size, number of classes with that size], ascending by class size.
struct GramSignature {
  std::vector<std::pair<long, long>> groups;

  std::string to_string() const;
  friend bool operator==(const GramSignature&, const GramSignature&) = default;
};

GramSignature gram_signature(const GramMatrix& g, const BigReal& tol);

/// Values clustered by chaining sorted neighbours closer than tol.
/// Returns the cluster sizes in sorted-value order.
std::vector<long> cluster_sizes(std::vector<BigReal> values, const BigReal& tol);

enum class Isometry { Match, Mismatch };

struct IsometryResult {
  Isometry verdict;
  /// True when an explicit point correspondence was found (n <= 12);
  /// otherwise a Match is only a signature match.
  bool confirmed;
};

/// Throws SizeMismatch when the sets differ in size.
IsometryResult isometric(const PointSet& p, const PointSet& q, const BigReal& tol);

using Mat3 = std::array<std::array<BigReal, 3>, 3>;

Vec3 transform(const Mat3& r, const Vec3& v);
PointSet transform(const Mat3& r, const PointSet& p);
/// Rotation by `angle` radians about the unit `axis`.
Mat3 axis_angle_rotation(const Vec3& axis, const BigReal& angle);
/// Rotation carrying the unit `normal` onto (0, 0, 1).
Mat3 rotation_to_z(const Point3& normal);
PointSet rotate_to_axis(const PointSet& p, const Point3& normal);
/// Uniformly random rotation.
Mat3 random_rotation(Rng& rng, int digits);

/// Uniform point on S^2: rejection-sampled from the unit ball, then normalized.
Point3 random_point(Rng& rng, int digits);
PointSet random_point_set(std::size_t n, Rng& rng, int digits);

}  // namespace sphcode
