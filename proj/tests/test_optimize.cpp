#include <doctest.h>

#include "known_codes.hpp"
#include "sphcode/errors.hpp"
#include "sphcode/optimize.hpp"

using namespace sphcode;

namespace {

const int P = 40;
BigReal c(const char* e) { return eval_constant(e, P); }

AnnealConfig quick_anneal(const char* final_precision) {
  AnnealConfig cfg;
  cfg.passes_per_round = 2000;
  cfg.final_precision = BigReal::parse(final_precision, P);
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  AnnealConfig a;
  a.scale_ratio = BigReal(1L, P);
  CHECK_THROWS_AS(a.validate(), DomainError);
  a = AnnealConfig{};
  a.passes_per_round = 0;
  CHECK_THROWS_AS(a.validate(), DomainError);
  DescentConfig d;
  d.alpha_numerator = BigReal(2L, P);
  CHECK_THROWS_AS(d.validate(), DomainError);
  d = DescentConfig{};
  d.tolerance = BigReal::zero(P);
  CHECK_THROWS_AS(d.validate(), DomainError);
  CHECK(DescentConfig::for_precision(60).tolerance == BigReal::pow10(-54, 60));
}

TEST_CASE("jiggle") {
  auto oct = known::octahedron();
  Rng a(3), b(3);
  auto j1 = jiggle(oct, BigReal(0.1, P), a);
  auto j2 = jiggle(oct, BigReal(0.1, P), b);
  for (std::size_t i = 0; i < oct.size(); ++i) {
    CHECK(j1[i].x == j2[i].x);
    CHECK(abs(norm2(j1[i]) - 1L) < roundoff_tol(P));
    CHECK(pair_distance(j1[i], oct[i]) < BigReal(0.35, P));
  }
  const BigReal tiny = BigReal::pow10(-20, P);
  auto j3 = jiggle(oct, tiny, a);
  for (std::size_t i = 0; i < oct.size(); ++i) CHECK(pair_distance(j3[i], oct[i]) < tiny * 10L);
}

TEST_CASE("anneal reaches small-n minima") {
  Rng rng(1);
  auto r4 = percolating_anneal(random_point_set(4, rng, P), Potential::coulomb(), quick_anneal("1e-15"), rng);
  CHECK(r4.stop == StopReason::Converged);
  CHECK(abs(r4.final_energy.value - c("3*sqrt(6)/2")) < BigReal::pow10(-10, P));
  auto r2 = percolating_anneal(random_point_set(2, rng, P), Potential::log(), quick_anneal("1e-15"), rng);
  CHECK(abs(r2.final_energy.value + log(BigReal(2L, P))) < BigReal::pow10(-10, P));
}

TEST_CASE("anneal history is monotone and reports match") {
  Rng rng(6);
  auto cfg = quick_anneal("1e-8");
  cfg.passes_per_round = 300;
  auto r = percolating_anneal(random_point_set(6, rng, P), Potential::inverse_square(), cfg, rng);
  for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k].second <= r.history[k - 1].second);
  CHECK(r.final_energy.value == energy(r.final_points, Potential::inverse_square()).value);
}

TEST_CASE("anneal at a minimum stays put") {
  Rng rng(2);
  auto cfg = quick_anneal("1e-30");
  cfg.passes_per_round = 200;
  cfg.scale_init = BigReal(1e-6, P);
  cfg.max_rounds = 3;
  auto oct = known::octahedron();
  auto r = percolating_anneal(oct, Potential::coulomb(), cfg, rng);
  CHECK(abs(r.final_energy.value - energy(oct, Potential::coulomb()).value) < BigReal::pow10(-10, P));
  CHECK(r.stop == StopReason::StagnationLimit);
  CHECK_THROWS_AS(require_converged(r), StagnationLimit);
}

TEST_CASE("descent step") {
  auto oct = known::octahedron();
  auto s = descent_step(oct, Potential::coulomb(), BigReal(0.1, P));
  for (std::size_t i = 0; i < oct.size(); ++i) CHECK(norm(s[i] - oct[i]) < roundoff_tol(P));
  auto same = descent_step(oct, Potential::coulomb(), BigReal::zero(P));
  CHECK(same[0].x == oct[0].x);
  PointSet near(std::vector<Point3>{normalize(Vec3::of(0.1, 0, 1, P)), Vec3::of(0, 0, -1, P)});
  auto moved = descent_step(near, Potential::coulomb(), BigReal(0.25, P));
  CHECK(energy(moved, Potential::coulomb()).value < energy(near, Potential::coulomb()).value);
}

TEST_CASE("descent converges") {
  Rng rng(5);
  auto cfg = DescentConfig::for_precision(P);
  cfg.tolerance = BigReal::pow10(-25, P);
  auto oct = jiggle(known::octahedron(), BigReal(1e-3, P), rng);
  auto r = descent(oct, Potential::coulomb(), cfg);
  CHECK(abs(r.final_energy.value - c("3/2+6*sqrt(2)")) < BigReal::pow10(-20, P));
  CHECK(r.residual < cfg.tolerance);
  CHECK(r.final_energy.value <= energy(oct, Potential::coulomb()).value);

  auto r5 = descent(random_point_set(5, rng, P), Potential::coulomb(), cfg);
  CHECK(abs(r5.final_energy.value - BigReal::parse("6.474691494688162439", P)) < BigReal::pow10(-15, P));

  auto r1 = descent(PointSet(std::vector<Point3>{Vec3::of(0, 0, 1, P)}), Potential::coulomb(), cfg);
  CHECK(r1.residual.is_zero());
  CHECK(r1.iterations == 0);
}

TEST_CASE("descent is deterministic") {
  Rng a(9), b(9);
  auto cfg = DescentConfig::for_precision(P);
  auto r1 = descent(random_point_set(7, a, P), Potential::coulomb(), cfg);
  auto r2 = descent(random_point_set(7, b, P), Potential::coulomb(), cfg);
  CHECK(r1.final_energy.value == r2.final_energy.value);
  CHECK(r1.iterations == r2.iterations);
}

TEST_CASE("multi-start") {
  auto cfg = DescentConfig::for_precision(P);
  auto m4 = multi_start(4, Potential::coulomb(), 5, cfg, 11, P);
  CHECK(abs(m4.best.final_energy.value - c("3*sqrt(6)/2")) < BigReal::pow10(-10, P));
  for (const auto& s : m4.signatures) CHECK(s == m4.signatures.front());
  auto m6 = multi_start(6, Potential::inverse_square(), 5, cfg, 11, P);
  CHECK(abs(m6.best.final_energy.value - c("27/4")) < BigReal::pow10(-10, P));

  auto one = multi_start(5, Potential::coulomb(), 1, cfg, 3, P);
  Rng rng(3, 0);
  auto single = descent(random_point_set(5, rng, P), Potential::coulomb(), cfg);
  CHECK(one.best.final_energy.value == single.final_energy.value);
}
