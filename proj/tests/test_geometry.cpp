#include <doctest.h>

#include <algorithm>

#include "known_codes.hpp"
#include "sphcode/errors.hpp"
#include "sphcode/geometry.hpp"
#include "sphcode/rng.hpp"

using namespace sphcode;

namespace {

const int P = 40;
BigReal eps(int k = 2) { return BigReal::pow10(k - P, P); }

PointSet permuted(const PointSet& p, Rng& rng) {
  std::vector<Point3> v = p.points();
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
    std::swap(v[i - 1], v[j]);
  }
  return PointSet(std::move(v));
}

PointSet mirrored(const PointSet& p) {
  std::vector<Point3> v;
  for (const auto& q : p) v.push_back({-q.x, q.y, q.z});
  return PointSet(std::move(v));
}

}  // namespace

TEST_CASE("normalize") {
  Point3 a = normalize(Vec3::of(2, 0, 0, P));
  CHECK(a.x == 1L);
  CHECK(a.y.is_zero());
  Point3 b = normalize(Vec3::of(1, 1, 1, P));
  CHECK(abs(b.x - sqrt(BigReal(1L, P) / 3L)) < eps());
  CHECK_THROWS_AS(normalize(Vec3::zero(P)), ZeroVector);
}

TEST_CASE("pair distance") {
  auto ap = known::antipodal();
  CHECK(abs(pair_distance(ap[0], ap[1]) - 2L) < eps());
  CHECK(pair_distance(ap[0], ap[0]).is_zero());
  auto tri = known::triangle();
  CHECK(abs(pair_distance(tri[0], tri[1]) - sqrt(BigReal(3L, P))) < eps());

  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    Point3 p = random_point(rng, P), q = random_point(rng, P), r = random_point(rng, P);
    CHECK(pair_distance(p, q) == pair_distance(q, p));
    CHECK(pair_distance(p, r) <= pair_distance(p, q) + pair_distance(q, r) + eps());
    CHECK(abs(square(pair_distance(p, q)) - (2L - 2L * dot(p, q))) < eps());
  }
}

TEST_CASE("point set invariants") {
  std::vector<Point3> off{Vec3::of(1.01, 0, 0, P)};
  CHECK_THROWS_AS(PointSet{off}, OffSphere);
  std::vector<Point3> dup{Vec3::of(1, 0, 0, P), Vec3::of(1, 0, 0, P)};
  CHECK_THROWS_AS(PointSet{dup}, CoincidentPoints);
  CHECK(known::octahedron().size() == 6);
}

TEST_CASE("gram matrix") {
  auto one = PointSet(std::vector<Point3>{Vec3::of(0, 0, 1, P)});
  CHECK(gram_matrix(one).at(0, 0) == 1L);
  auto g = gram_matrix(known::antipodal());
  CHECK(g.at(0, 1) == -1L);
  CHECK(g.at(1, 1) == 1L);
  auto go = gram_matrix(known::octahedron());
  long zeros = 0, minus = 0;
  for (const auto& e : go.entries()) {
    zeros += e.is_zero();
    minus += e == -1L;
  }
  CHECK(zeros == 24);
  CHECK(minus == 6);
}

TEST_CASE("gram signatures") {
  const BigReal tol = half_precision_tol(P);
  CHECK(gram_signature(gram_matrix(known::antipodal()), tol).groups == std::vector<std::pair<long, long>>{{2, 2}});
  CHECK(gram_signature(gram_matrix(known::triangle()), tol).groups ==
        std::vector<std::pair<long, long>>{{3, 1}, {6, 1}});
  CHECK(gram_signature(gram_matrix(known::octahedron()), tol).groups ==
        std::vector<std::pair<long, long>>{{6, 2}, {24, 1}});
  auto sig = gram_signature(gram_matrix(known::icosahedron()), tol);
  long total = 0;
  for (auto [size, count] : sig.groups) total += size * count;
  CHECK(total == 144);
}

TEST_CASE("signatures are permutation and rotation invariant") {
  Rng rng(21);
  const BigReal tol = half_precision_tol(P);
  for (const PointSet& p : {known::octahedron(), known::icosahedron(), known::cube(), random_point_set(9, rng, P)}) {
    const auto base = gram_signature(gram_matrix(p), tol);
    for (int k = 0; k < 3; ++k) {
      PointSet q = transform(random_rotation(rng, P), permuted(p, rng));
      CHECK(gram_signature(gram_matrix(q), tol) == base);
    }
  }
}

TEST_CASE("isometry") {
  Rng rng(4);
  const BigReal tol = half_precision_tol(P);
  auto oct = known::octahedron();
  auto rot = transform(random_rotation(rng, P), oct);
  auto r1 = isometric(oct, rot, tol);
  CHECK(r1.verdict == Isometry::Match);
  CHECK(r1.confirmed);
  CHECK(isometric(oct, mirrored(oct), tol).verdict == Isometry::Match);
  CHECK(isometric(known::square(), known::tetrahedron(), tol).verdict == Isometry::Mismatch);
  CHECK_THROWS_AS(isometric(oct, known::cube(), tol), SizeMismatch);
  auto c32 = known::code32();
  auto r32 = isometric(c32, transform(random_rotation(rng, P), c32), tol);
  CHECK(r32.verdict == Isometry::Match);
  CHECK_FALSE(r32.confirmed);
}

TEST_CASE("rotate to axis") {
  Rng rng(8);
  const BigReal tol = half_precision_tol(P);
  auto oct = known::octahedron();
  auto same = rotate_to_axis(oct, Vec3::of(0, 0, 1, P));
  for (std::size_t i = 0; i < oct.size(); ++i) CHECK(norm(same[i] - oct[i]) < eps());
  auto flipped = rotate_to_axis(oct, Vec3::of(0, 0, -1, P));
  CHECK(isometric(oct, flipped, tol).verdict == Isometry::Match);
  Point3 face = normalize(Vec3::of(1, 1, 1, P));
  auto turned = rotate_to_axis(oct, face);
  CHECK(gram_signature(gram_matrix(turned), tol).groups == std::vector<std::pair<long, long>>{{6, 2}, {24, 1}});
  Point3 moved = transform(rotation_to_z(face), face);
  CHECK(abs(moved.z - 1L) < eps());
  for (int k = 0; k < 5; ++k) {
    auto p = random_point_set(7, rng, P);
    CHECK(isometric(p, rotate_to_axis(p, random_point(rng, P)), tol).verdict == Isometry::Match);
  }
}

TEST_CASE("random points") {
  Rng a(77), b(77);
  Point3 p = random_point(a, P), q = random_point(b, P);
  CHECK(p.x == q.x);
  CHECK(p.z == q.z);
  Rng r(5);
  Vec3 sum = Vec3::zero(P);
  bool on = true;
  for (int i = 0; i < 10000; ++i) {
    Point3 x = random_point(r, P);
    on = on && abs(norm2(x) - 1L) < roundoff_tol(P);
    sum += x;
  }
  CHECK(on);
  CHECK(norm(sum) / 10000L < BigReal(0.05, P));
}
