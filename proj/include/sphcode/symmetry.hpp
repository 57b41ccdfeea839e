#pragma once

#include <utility>
#include <vector>

#include "sphcode/geometry.hpp"

namespace sphcode {

struct PlaneFamily {
  Point3 normal;  // unit, sign-canonical
  BigReal offset;  // normal . x for every member
  std::vector<std::size_t> members;  // ascending
};

struct Polygon {
  int k = 0;
  std::vector<std::size_t> members;  // ascending
  Point3 normal;
};

using Histogram = std::vector<std::pair<long, long>>;

struct SymmetryReport {
  Histogram planes;    // [size, count]
  Histogram polygons;  // [k, count]
  GramSignature gram_groups;
};

/// 10^-12, or the half-precision tolerance when that is looser.
BigReal default_symmetry_tol(int digits);

/// Maximal sets of >= 4 points within tol of a common plane.
std::vector<PlaneFamily> coplanar_families(const PointSet& p, const BigReal& tol);

/// Regular k-gons (k >= 3) among coplanar points: every subset closed under
/// rotation by 2*pi/k about the plane's circle centre.
std::vector<Polygon> regular_polygons(const PointSet& p, const BigReal& tol);

SymmetryReport symmetry_report(const PointSet& p, const BigReal& tol);
std::string to_string(const Histogram& h);

/// Normal of the highest-order polygon, ties broken by the number of parallel
/// polygons, then the lexicographically smaller normal; falls back to plane
/// families.
/// Throws NoStructure when neither exists.
Point3 suggest_axis(const PointSet& p, const BigReal& tol);

}  // namespace sphcode
