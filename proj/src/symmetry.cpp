#include "sphcode/symmetry.hpp"

#include <algorithm>
#include <map>

#include "sphcode/errors.hpp"

namespace sphcode {

namespace {

// Flips v so its first component larger than tol in magnitude is positive.
Point3 canonical_sign(const Point3& v, const BigReal& tol) {
  for (const BigReal* c : {&v.x, &v.y, &v.z}) {
    if (abs(*c) > tol) return c->sign() > 0 ? v : -v;
  }
  return v;
}

// Every distinct plane through >= 3 points, as (normal, offset, members).
// A plane is reported by its first three members only, so no merge is needed.
std::vector<PlaneFamily> all_planes(const PointSet& p, const BigReal& tol, std::size_t min_size) {
  const std::size_t n = p.size();
  std::vector<std::vector<PlaneFamily>> per_row(n);
#pragma omp parallel for schedule(dynamic) if (n >= 8)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 a = p[j] - p[i];
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 c = cross(a, p[k] - p[i]);
        if (norm(c) < tol) continue;
        Point3 nrm = canonical_sign(normalize(c), tol);
        BigReal off = dot(nrm, p[i]);
        std::vector<std::size_t> members;
        for (std::size_t m = 0; m < n; ++m) {
          if (abs(dot(nrm, p[m]) - off) < tol) members.push_back(m);
        }
        if (members.size() < min_size || members[0] != i || members[1] != j || members[2] != k) continue;
        per_row[i].push_back(PlaneFamily{std::move(nrm), std::move(off), std::move(members)});
      }
    }
  }
  std::vector<PlaneFamily> out;
  for (auto& row : per_row) {
    for (auto& f : row) out.push_back(std::move(f));
  }
  return out;
}

// Member index within tol of q, if any.
std::ptrdiff_t find_point(const PointSet& p, const std::vector<std::size_t>& members, const Vec3& q,
                          const BigReal& tol) {
  for (std::size_t m : members) {
    if (norm(p[m] - q) < tol) return static_cast<std::ptrdiff_t>(m);
  }
  return -1;
}

void polygons_in(const PointSet& p, const PlaneFamily& f, const BigReal& tol, std::vector<Polygon>& out) {
  const int d = p.digits();
  const Vec3 centre = f.normal * f.offset;
  const std::size_t m = f.members.size();
  std::vector<std::vector<std::size_t>> seen;
  for (std::size_t k = 3; k <= m; ++k) {
    const Mat3 rot = axis_angle_rotation(f.normal, BigReal::pi(d) * 2L / static_cast<long>(k));
    for (std::size_t s : f.members) {
      std::vector<std::size_t> orbit{s};
      Vec3 cur = p[s] - centre;
      bool ok = true;
      for (std::size_t step = 1; step < k && ok; ++step) {
        cur = transform(rot, cur);
        const auto hit = find_point(p, f.members, centre + cur, tol);
        if (hit < 0 || std::find(orbit.begin(), orbit.end(), static_cast<std::size_t>(hit)) != orbit.end()) {
          ok = false;
        } else {
          orbit.push_back(static_cast<std::size_t>(hit));
          cur = p[static_cast<std::size_t>(hit)] - centre;
        }
      }
      if (!ok || norm(transform(rot, cur) + centre - p[s]) >= tol) continue;
      std::sort(orbit.begin(), orbit.end());
      if (std::find(seen.begin(), seen.end(), orbit) != seen.end()) continue;
      seen.push_back(orbit);
      out.push_back(Polygon{static_cast<int>(k), orbit, f.normal});
    }
  }
}

template <class T, class Key>
Histogram histogram(const std::vector<T>& items, Key key) {
  std::map<long, long> h;
  for (const auto& it : items) ++h[key(it)];
  return Histogram(h.begin(), h.end());
}

bool lex_less(const Point3& a, const Point3& b, const BigReal& tol) {
  for (int c = 0; c < 3; ++c) {
    const BigReal& x = c == 0 ? a.x : c == 1 ? a.y : a.z;
    const BigReal& y = c == 0 ? b.x : c == 1 ? b.y : b.z;
    if (abs(x - y) > tol) return x < y;
  }
  return false;
}

struct AxisGroup {
  Point3 normal;
  long count = 0;
  int max_k = 0;
};

void add_axis(std::vector<AxisGroup>& groups, const Point3& nrm, int k, const BigReal& tol) {
  for (auto& g : groups) {
    if (norm(g.normal - nrm) < tol) {
      ++g.count;
      g.max_k = std::max(g.max_k, k);
      return;
    }
  }
  groups.push_back(AxisGroup{nrm, 1, k});
}

Point3 pick(const std::vector<AxisGroup>& groups, const BigReal& tol) {
  const AxisGroup* best = &groups.front();
  for (const auto& g : groups) {
    if (g.max_k != best->max_k) {
      if (g.max_k > best->max_k) best = &g;
    } else if (g.count != best->count) {
      if (g.count > best->count) best = &g;
    } else if (lex_less(g.normal, best->normal, tol)) {
      best = &g;
    }
  }
  return best->normal;
}

}  // namespace

BigReal default_symmetry_tol(int digits) { return max(BigReal::pow10(-12, digits), half_precision_tol(digits)); }

std::vector<PlaneFamily> coplanar_families(const PointSet& p, const BigReal& tol) { return all_planes(p, tol, 4); }

std::vector<Polygon> regular_polygons(const PointSet& p, const BigReal& tol) {
  std::vector<Polygon> out;
  for (const auto& f : all_planes(p, tol, 3)) polygons_in(p, f, tol, out);
  return out;
}

SymmetryReport symmetry_report(const PointSet& p, const BigReal& tol) {
  SymmetryReport r;
  r.planes = histogram(coplanar_families(p, tol), [](const PlaneFamily& f) { return static_cast<long>(f.members.size()); });
  r.polygons = histogram(regular_polygons(p, tol), [](const Polygon& q) { return static_cast<long>(q.k); });
  r.gram_groups = gram_signature(gram_matrix(p), tol);
  return r;
}

std::string to_string(const Histogram& h) {
  std::string s = "[";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) s += ", ";
    s += "[" + std::to_string(h[i].first) + ", " + std::to_string(h[i].second) + "]";
  }
  return s + "]";
}

Point3 suggest_axis(const PointSet& p, const BigReal& tol) {
  std::vector<AxisGroup> groups;
  for (const auto& q : regular_polygons(p, tol)) add_axis(groups, q.normal, q.k, tol);
  if (groups.empty()) {
    for (const auto& f : coplanar_families(p, tol)) add_axis(groups, f.normal, 0, tol);
  }
  if (groups.empty()) throw NoStructure("no embedded polygons or coplanar families");
  return pick(groups, tol);
}

}  // namespace sphcode
