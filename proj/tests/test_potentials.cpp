#include <doctest.h>

#include "known_codes.hpp"
#include "sphcode/errors.hpp"
#include "sphcode/kernels.hpp"
#include "sphcode/potentials.hpp"
#include "sphcode/rng.hpp"

using namespace sphcode;

namespace {

const int P = 40;
BigReal c(const char* e, int d = P) { return eval_constant(e, d); }

// Central difference of the energy along tangent direction t at point i.
BigReal fd_directional(const PointSet& p, std::size_t i, const Vec3& t, const Potential& pot, const BigReal& h) {
  auto shifted = [&](const BigReal& s) {
    std::vector<Point3> v = p.points();
    v[i] = normalize(v[i] + t * s);
    return energy(PointSet::trusted(std::move(v)), pot).value;
  };
  return (shifted(h) - shifted(-h)) / (2L * h);
}

}  // namespace

TEST_CASE("potential tokens") {
  CHECK(Potential::parse("log").is_log());
  CHECK(Potential::parse("r1") == Potential::coulomb());
  CHECK(Potential::parse("r2") == Potential::inverse_square());
  CHECK(Potential::parse("rs:3").s == 3);
  CHECK(Potential::parse("rs:3").token() == "rs:3");
  CHECK_THROWS_AS(Potential::parse("coulomb"), ParseError);
  CHECK_THROWS_AS(Potential::riesz(0), DomainError);
}

TEST_CASE("pair potential") {
  CHECK(pair_potential(BigReal(2L, P), Potential::coulomb()) == BigReal(1L, P) / 2L);
  CHECK(pair_potential(BigReal(2L, P), Potential::inverse_square()) == BigReal(1L, P) / 4L);
  CHECK(abs(pair_potential(BigReal(2L, P), Potential::log()) + log(BigReal(2L, P))) < BigReal::pow10(-38, P));
  CHECK_THROWS_AS(pair_potential(BigReal::zero(P), Potential::coulomb()), DomainError);
}

TEST_CASE("closed-form energies") {
  const BigReal tol = BigReal::pow10(-35, P);
  auto ap = known::antipodal();
  CHECK(abs(energy(ap, Potential::log()).value + log(BigReal(2L, P))) < tol);
  CHECK(abs(energy(ap, Potential::coulomb()).value - c("1/2")) < tol);
  CHECK(abs(energy(known::triangle(), Potential::coulomb()).value - c("sqrt(3)")) < tol);
  CHECK(abs(energy(known::triangle(), Potential::inverse_square()).value - 1L) < tol);
  CHECK(abs(energy(known::tetrahedron(), Potential::coulomb()).value - c("3*sqrt(6)/2")) < tol);
  CHECK(abs(energy(known::tetrahedron(), Potential::inverse_square()).value - c("9/4")) < tol);
  CHECK(abs(energy(known::octahedron(), Potential::coulomb()).value - c("3/2+6*sqrt(2)")) < tol);
  CHECK(abs(energy(known::octahedron(), Potential::inverse_square()).value - c("27/4")) < tol);
  CHECK(abs(energy(known::octahedron(), Potential::log()).value + log(BigReal(512L, P))) < tol);
  CHECK(abs(energy(known::icosahedron(), Potential::inverse_square()).value - 39L) < tol);
  CHECK(abs(energy(known::code32(), Potential::inverse_square()).value - c("803/2")) < BigReal::pow10(-33, P));
  CHECK(energy(known::octahedron(), Potential::coulomb()).n == 6);
}

TEST_CASE("forces") {
  auto ap = known::antipodal();
  for (auto pot : {Potential::log(), Potential::coulomb(), Potential::inverse_square()}) {
    Vec3 f = force(ap, 0, pot);
    CHECK(norm(tangential_component(ap[0], f)) < BigReal::pow10(-38, P));
    CHECK(residual(ap, pot) < BigReal::pow10(-38, P));
  }
  CHECK(residual(known::icosahedron(), Potential::coulomb()) < BigReal::pow10(-35, P));
  std::vector<Point3> v{Vec3::of(1, 0, 0, P), Vec3::of(1, 0, 0, P)};
  CHECK_THROWS_AS(energy(PointSet::trusted(v), Potential::coulomb()), CoincidentPoints);
  CHECK_THROWS_AS(force(PointSet::trusted(v), 0, Potential::coulomb()), CoincidentPoints);
}

TEST_CASE("force matches finite differences") {
  Rng rng(12);
  const BigReal h = BigReal::pow10(-15, P);
  for (auto pot : {Potential::log(), Potential::coulomb(), Potential::inverse_square(), Potential::riesz(3)}) {
    PointSet p = random_point_set(7, rng, P);
    auto f = forces(p, pot);
    for (std::size_t i = 0; i < p.size(); ++i) {
      Vec3 t = tangential_component(p[i], random_point(rng, P));
      BigReal analytic = -dot(f[i], t);
      BigReal numeric = fd_directional(p, i, t, pot, h);
      CHECK(abs(analytic - numeric) < BigReal::pow10(-(P / 3), P) * max(BigReal::one(P), abs(analytic)));
    }
  }
}

TEST_CASE("parallel kernels agree with the serial reference") {
  Rng rng(31);
  for (std::size_t n : {5, 16, 40}) {
    PointSet p = random_point_set(n, rng, P);
    for (auto pot : {Potential::log(), Potential::coulomb(), Potential::inverse_square()}) {
      BigReal es = kernels::energy_serial(p, pot), ep = kernels::energy_parallel(p, pot);
      CHECK(abs(es - ep) < BigReal::pow10(4 - P, P) * abs(es));
      auto fs = kernels::forces_serial(p, pot), fp = kernels::forces_parallel(p, pot);
      for (std::size_t i = 0; i < n; ++i) CHECK(norm(fs[i] - fp[i]) < BigReal::pow10(4 - P, P) * (1L + norm(fs[i])));
      auto hs = kernels::ambient_hessian_serial(p, pot), hp = kernels::ambient_hessian_parallel(p, pot);
      REQUIRE(hs.size() == hp.size());
      for (std::size_t k = 0; k < hs.size(); ++k) CHECK(abs(hs[k] - hp[k]) < BigReal::pow10(4 - P, P) * (1L + abs(hs[k])));
    }
  }
}

TEST_CASE("parallel kernels are deterministic") {
  Rng rng(2);
  PointSet p = random_point_set(33, rng, P);
  CHECK(kernels::energy_parallel(p, Potential::coulomb()) == kernels::energy_parallel(p, Potential::coulomb()));
}

TEST_CASE("energy invariance") {
  Rng rng(14);
  PointSet p = random_point_set(10, rng, P);
  for (auto pot : {Potential::log(), Potential::coulomb(), Potential::inverse_square()}) {
    BigReal e = energy(p, pot).value;
    BigReal er = energy(transform(random_rotation(rng, P), p), pot).value;
    std::vector<Point3> rev(p.points().rbegin(), p.points().rend());
    BigReal ep = energy(PointSet(rev), pot).value;
    CHECK(abs(e - er) < BigReal::pow10(3 - P, P) * max(BigReal::one(P), abs(e)));
    CHECK(abs(e - ep) < BigReal::pow10(3 - P, P) * max(BigReal::one(P), abs(e)));
  }
}
