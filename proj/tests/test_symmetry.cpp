#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "known_codes.hpp"
#include "sphcode/errors.hpp"
#include "sphcode/symmetry.hpp"

using namespace sphcode;

namespace {

const int P = 40;
const BigReal& tol() {
  static const BigReal t = default_symmetry_tol(P);
  return t;
}

Histogram polygon_hist(const PointSet& p) { return symmetry_report(p, tol()).polygons; }

bool coplanar(const PointSet& p, const std::vector<std::size_t>& s) {
  if (s.size() <= 3) return true;
  Vec3 n = cross(p[s[1]] - p[s[0]], p[s[2]] - p[s[0]]);
  if (norm(n) < BigReal::pow10(-10, P)) return false;
  n = normalize(n);
  for (std::size_t i = 3; i < s.size(); ++i)
    if (abs(dot(n, p[s[i]] - p[s[0]])) > tol()) return false;
  return true;
}

// A point set is a regular k-gon iff it is coplanar and, from every vertex, the
// sorted distances to the others are 2 r sin(pi j / k), j = 1..k-1.
bool regular(const PointSet& p, const std::vector<std::size_t>& s) {
  const long k = static_cast<long>(s.size());
  if (!coplanar(p, s)) return false;
  Vec3 c = Vec3::zero(P);
  for (auto i : s) c += p[i];
  c = c * (BigReal::one(P) / k);
  const BigReal r = norm(p[s[0]] - c);
  if (r < BigReal::pow10(-10, P)) return false;
  std::vector<BigReal> want;
  for (long j = 1; j < k; ++j) want.push_back(2L * r * sin(BigReal::pi(P) * j / k));
  std::sort(want.begin(), want.end());
  for (auto i : s) {
    std::vector<BigReal> d;
    for (auto j : s)
      if (j != i) d.push_back(norm(p[i] - p[j]));
    std::sort(d.begin(), d.end());
    for (std::size_t m = 0; m < d.size(); ++m)
      if (abs(d[m] - want[m]) > BigReal::pow10(-15, P)) return false;
  }
  return true;
}

Histogram brute_polygons(const PointSet& p) {
  std::map<long, long> h;
  const std::size_t n = p.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 3) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) s.push_back(i);
    if (regular(p, s)) ++h[static_cast<long>(s.size())];
  }
  return {h.begin(), h.end()};
}

Histogram brute_planes(const PointSet& p) {
  std::set<std::vector<std::size_t>> fams;
  const std::size_t n = p.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        Vec3 nn = cross(p[b] - p[a], p[c] - p[a]);
        if (norm(nn) < BigReal::pow10(-10, P)) continue;
        nn = normalize(nn);
        std::vector<std::size_t> m;
        for (std::size_t i = 0; i < n; ++i)
          if (abs(dot(nn, p[i] - p[a])) <= tol()) m.push_back(i);
        if (m.size() >= 4) fams.insert(m);
      }
  std::map<long, long> h;
  for (const auto& f : fams) ++h[static_cast<long>(f.size())];
  return {h.begin(), h.end()};
}

PointSet permuted(const PointSet& p, Rng& rng) {
  std::vector<Point3> v(p.begin(), p.end());
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.next_u64() % i]);
  return PointSet(std::move(v));
}

}  // namespace

TEST_CASE("coplanar families") {
  auto oct = symmetry_report(known::octahedron(), tol());
  CHECK(oct.planes == Histogram{{4, 3}});
  CHECK(to_string(oct.planes) == "[[4, 3]]");
  CHECK(coplanar_families(known::tetrahedron(), tol()).empty());
  CHECK(coplanar_families(known::triangle(), tol()).empty());
  auto fams = coplanar_families(known::octahedron(), tol());
  for (const auto& f : fams) {
    CHECK(abs(norm(f.normal) - 1L) < BigReal::pow10(-30, P));
    CHECK(f.offset.is_zero());
  }
}

TEST_CASE("regular polygons") {
  CHECK(polygon_hist(known::octahedron()) == Histogram{{3, 8}, {4, 3}});
  CHECK(polygon_hist(known::bipyramid()) == Histogram{{3, 1}});
  CHECK(polygon_hist(known::antipodal()).empty());
  CHECK(polygon_hist(known::tetrahedron()) == Histogram{{3, 4}});
  auto ico = polygon_hist(known::icosahedron());
  CHECK(std::find(ico.begin(), ico.end(), std::pair<long, long>{5, 12}) != ico.end());
  CHECK(std::find(ico.begin(), ico.end(), std::pair<long, long>{3, 20 + 20}) != ico.end());
  for (int k = 3; k <= 12; ++k) {
    CAPTURE(k);
    auto polys = regular_polygons(known::ring(k), tol());
    bool found = false;
    for (const auto& pg : polys) found = found || (pg.k == k && pg.members.size() == static_cast<std::size_t>(k));
    CHECK(found);
  }
}

TEST_CASE("gram groups") {
  CHECK(symmetry_report(known::triangle(), tol()).gram_groups.groups ==
        std::vector<std::pair<long, long>>{{3, 1}, {6, 1}});
  CHECK(symmetry_report(known::octahedron(), tol()).gram_groups.groups ==
        std::vector<std::pair<long, long>>{{6, 2}, {24, 1}});
}

TEST_CASE("brute-force oracle on small sets") {
  Rng rng(11);
  std::vector<PointSet> sets = {known::octahedron(), known::bipyramid(), known::tetrahedron(), known::square(),
                                known::cube(),       known::ring(7),     known::ring(8),        random_point_set(7, rng, P)};
  for (const auto& p : sets) {
    CAPTURE(p.size());
    auto r = symmetry_report(p, tol());
    CHECK(r.polygons == brute_polygons(p));
    CHECK(r.planes == brute_planes(p));
  }
}

TEST_CASE("invariance under permutation and rotation") {
  Rng rng(29);
  for (const auto& p : {known::octahedron(), known::icosahedron(), known::code32()}) {
    auto base = symmetry_report(p, tol());
    auto perm = symmetry_report(permuted(p, rng), tol());
    auto rot = symmetry_report(transform(random_rotation(rng, P), p), tol());
    CHECK(perm.planes == base.planes);
    CHECK(perm.polygons == base.polygons);
    CHECK(perm.gram_groups == base.gram_groups);
    CHECK(rot.planes == base.planes);
    CHECK(rot.polygons == base.polygons);
    CHECK(rot.gram_groups == base.gram_groups);
  }
}

TEST_CASE("axis suggestion") {
  auto e = builtin_spec(27, Potential::inverse_square());
  auto axis = suggest_axis(build_points(e.spec, e.seed), tol());
  CHECK(abs(axis.x) < BigReal::pow10(-20, P));
  CHECK(abs(axis.y) < BigReal::pow10(-20, P));
  CHECK(abs(abs(axis.z) - 1L) < BigReal::pow10(-20, P));

  // Octahedron: a coordinate axis (4-fold).
  auto oa = suggest_axis(known::octahedron(), tol());
  int ones = 0;
  for (const auto& c : {oa.x, oa.y, oa.z}) ones += abs(abs(c) - 1L) < BigReal::pow10(-20, P);
  CHECK(ones == 1);

  Rng rng(7);
  CHECK_THROWS_AS(suggest_axis(random_point_set(6, rng, P), tol()), NoStructure);
}
