// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "known_codes.hpp"
#include "sphcode/algebra.hpp"
#include "sphcode/errors.hpp"
#include "sphcode/io.hpp"
#include "sphcode/optimize.hpp"
#include "sphcode/paramconfig.hpp"
#include "sphcode/registry.hpp"
#include "sphcode/symmetry.hpp"
#include "sphcode/verify.hpp"

using namespace sphcode;

namespace {

const int P = 40;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

BigReal c(const char* expr) { return eval_constant(expr, P); }
BigReal tenpow(int e) { return BigReal::pow10(e, P); }
std::string sci(const BigReal& x) { return x.to_string(3); }

BigReal minimized(std::size_t n, const Potential& pot, long restarts, std::uint64_t seed) {
  return multi_start(n, pot, restarts, DescentConfig::for_precision(P), seed, P).best.final_energy.value;
}

Outcome exact_small_n() {
  Outcome o;
  struct Row {
    std::size_t n;
    Potential pot;
    const char* closed;
  };
  const Potential L = Potential::log(), R1 = Potential::coulomb(), R2 = Potential::inverse_square();
  // Log values use sums of logs so the constant parser only needs sqrt and arithmetic.
  std::vector<std::pair<Row, BigReal>> rows = {
      {{2, L, ""}, -log(c("2"))},       {{2, R1, "1/2"}, {}},        {{2, R2, "1/4"}, {}},
      {{3, L, ""}, -log(c("27")) / 2L}, {{3, R1, "sqrt(3)"}, {}},    {{3, R2, "1"}, {}},
      {{4, L, ""}, log(c("27/512"))},   {{4, R1, "3*sqrt(6)/2"}, {}}, {{4, R2, "9/4"}, {}},
      {{5, R2, "17/4"}, {}},            {{6, L, ""}, -log(c("512"))}, {{6, R1, "3/2+6*sqrt(2)"}, {}},
      {{6, R2, "27/4"}, {}},            {{7, R2, "41/4"}, {}},
  };
  for (auto& [row, value] : rows) {
    BigReal want = *row.closed ? c(row.closed) : value;
    BigReal got = minimized(row.n, row.pot, 5, 1000 + row.n);
    BigReal err = abs(got - want);
    o.require(err < tenpow(-10), "n=" + std::to_string(row.n) + " " + row.pot.token() + " err " + sci(err));
  }
  return o;
}

Outcome icosahedron_r2() {
  Outcome o;
  Rng rng(2);
  auto start = jiggle(known::icosahedron(), tenpow(-3), rng);
  auto r = descent(start, Potential::inverse_square(), DescentConfig::for_precision(P));
  BigReal err = abs(r.final_energy.value - 39L);
  o.require(err < tenpow(-20), "err " + sci(err));
  return o;
}

Outcome code32_r2() {
  Outcome o;
  Rng rng(3);
  auto start = jiggle(known::code32(), tenpow(-3), rng);
  auto r = descent(start, Potential::inverse_square(), DescentConfig::for_precision(P));
  BigReal err = abs(r.final_energy.value - c("803/2"));
  o.require(err < tenpow(-15), "err " + sci(err));
  return o;
}

Outcome antiprism_not_cube() {
  Outcome o;
  BigReal best = minimized(8, Potential::coulomb(), 5, 8);
  BigReal cube = energy(known::cube(), Potential::coulomb()).value;
  o.require(cube > best, "cube " + cube.to_string(20) + " not above " + best.to_string(20));
  BigReal err = abs(best - BigReal::parse("19.67528786123276226", P));
  o.require(err < tenpow(-14) * 19.675, "8-point energy err " + sci(err));
  return o;
}

Outcome newton_algdep() {
  Outcome o;
  auto check = [&](std::size_t n, const Potential& pot, bool use_energy, bool even, const std::string& want) {
    auto e = builtin_spec(n, pot);
    ParamVector seed = with_precision(e.seed, 20);
    seed.values[0] = BigReal::parse(std::to_string(seed.values[0].to_double()).substr(0, 4), 20);
    auto p = newton_refine(e.spec, seed, pot, 80);
    BigReal x = use_energy ? param_energy(e.spec, p, pot) : p.values[0];
    auto r = minimal_polynomial(x, 8, even);
    const std::string tag = "n=" + std::to_string(n) + " " + pot.token();
    o.require(r.accepted && r.poly.to_string() == want, tag + " got " + r.poly.to_string());
    o.require(abs(verify_root(r.poly, x)) < BigReal::pow10(-35, x.digits()), tag + " residual " + sci(r.residual));
  };
  check(8, Potential::log(), false, true, "7x^4 + 26x^2 - 9");
  check(10, Potential::log(), false, true, "9x^4 + 38x^2 - 7");
  check(8, Potential::inverse_square(), true, false, "64x^4 - 1408x^3 + 8144x^2 - 16432x + 6897");
  return o;
}

Outcome gram_agreement() {
  Outcome o;
  auto m = multi_start(19, Potential::coulomb(), 5, DescentConfig::for_precision(P), 19, P);
  for (std::size_t k = 0; k < m.energies.size(); ++k) {
    o.require(m.succeeded[k], "restart " + std::to_string(k) + " failed");
    o.require(m.signatures[k] == m.signatures[0], "signature " + std::to_string(k) + " differs");
    BigReal err = abs(m.energies[k] - m.energies[0]);
    o.require(err < tenpow(-25) * abs(m.energies[0]), "energy " + std::to_string(k) + " differs by " + sci(err));
  }
  return o;
}

Outcome hessian_cert() {
  Outcome o;
  for (std::size_t n : {4, 6, 12}) {
    auto best = multi_start(n, Potential::coulomb(), 3, DescentConfig::for_precision(P), 40 + n, P).best;
    auto h = verify_minimum(best.final_points, Potential::coulomb(), tenpow(-20));
    long zeros = 0, positive = 0;
    for (const auto& l : h.eigenvalues) {
      if (abs(l) < tenpow(-20)) ++zeros;
      else if (l.sign() > 0) ++positive;
    }
    o.require(zeros == 3 && zeros + positive == static_cast<long>(h.eigenvalues.size()),
              "n=" + std::to_string(n) + " zeros " + std::to_string(zeros) + " positive " + std::to_string(positive));
  }
  return o;
}

Outcome symmetry_fixtures() {
  Outcome o;
  const BigReal tol = default_symmetry_tol(P);
  auto oct = symmetry_report(known::octahedron(), tol);
  o.require(oct.gram_groups.groups == std::vector<std::pair<long, long>>{{6, 2}, {24, 1}},
            "octahedron gram " + oct.gram_groups.to_string());
  o.require(oct.polygons == Histogram{{3, 8}, {4, 3}}, "octahedron polygons " + to_string(oct.polygons));
  auto ico = symmetry_report(known::icosahedron(), tol);
  bool five = false;
  for (const auto& [k, count] : ico.polygons) five = five || (k == 5 && count == 12);
  o.require(five, "icosahedron polygons " + to_string(ico.polygons));
  return o;
}

Outcome property_suites() {
  Outcome o;
  Rng rng(99);
  const BigReal h = tenpow(-(P / 3));

  // Gradient vs central differences along the tangent direction of one point.
  for (auto pot : {Potential::log(), Potential::coulomb(), Potential::inverse_square(), Potential::riesz(3)}) {
    auto p = random_point_set(7, rng, P);
    auto f = forces(p, pot);
    std::vector<Point3> plus(p.begin(), p.end()), minus(p.begin(), p.end());
    Vec3 t = normalize(cross(p[2], Vec3::of(0.3, 0.5, 0.7, P)));
    plus[2] = normalize(p[2] + t * h);
    minus[2] = normalize(p[2] - t * h);
    BigReal fd = (energy(PointSet(minus), pot).value - energy(PointSet(plus), pot).value) / (2L * h);
    BigReal an = dot(f[2], t);
    BigReal rel = abs(fd - an) / max(BigReal::one(P), abs(an));
    o.require(rel < tenpow(-(P / 3)), "gradient " + pot.token() + " rel " + sci(rel));
  }

  // Rotation and permutation invariance of energy and Gram signature.
  auto p = known::icosahedron();
  auto q = transform(random_rotation(rng, P), p);
  std::vector<Point3> rev(q.begin(), q.end());
  std::reverse(rev.begin(), rev.end());
  PointSet r(rev);
  const BigReal e0 = energy(p, Potential::coulomb()).value;
  o.require(abs(energy(r, Potential::coulomb()).value - e0) < tenpow(-30), "energy invariance");
  const BigReal gtol = default_symmetry_tol(P);
  o.require(gram_signature(gram_matrix(r), gtol) == gram_signature(gram_matrix(p), gtol), "signature invariance");

  // Anneal history is monotone non-increasing.
  AnnealConfig ac;
  ac.passes_per_round = 200;
  ac.final_precision = tenpow(-8);
  auto run = percolating_anneal(random_point_set(6, rng, P), Potential::coulomb(), ac, rng);
  for (std::size_t k = 1; k < run.history.size(); ++k)
    o.require(run.history[k].second <= run.history[k - 1].second, "anneal history rises at " + std::to_string(k));

  // Newton: correct digits at least double until the working precision binds.
  auto e = builtin_spec(10, Potential::inverse_square());
  auto rep = newton_refine_report(e.spec, with_precision(e.seed, 20), Potential::inverse_square(), 60);
  for (std::size_t k = 0; k + 1 < rep.steps.size(); ++k) {
    const double g0 = rep.steps[k].grad_norm.log10_abs(), g1 = rep.steps[k + 1].grad_norm.log10_abs();
    if (g0 < -4) o.require(g1 <= 1.8 * g0 || g1 <= 5.0 - rep.steps[k].digits, "newton step " + std::to_string(k));
  }
  o.require(rep.grad_norm < BigReal::pow10(-55, 70), "newton final gradient " + sci(rep.grad_norm));

  // File round trips.
  std::ostringstream os;
  format_points(os, q, P);
  std::istringstream is(os.str());
  auto back = parse_points(is).points;
  bool same = back.size() == q.size();
  for (std::size_t i = 0; same && i < q.size(); ++i) same = back[i].x == q[i].x && back[i].y == q[i].y && back[i].z == q[i].z;
  o.require(same, "point file round trip");
  std::ostringstream ps;
  format_params(ps, rep.params);
  std::istringstream pin(ps.str());
  o.require(parse_params(pin) == rep.params, "param file round trip");
  std::ostringstream ss;
  format_spec(ss, e.spec);
  o.require(parse_spec_text(ss.str()) == e.spec, "spec file round trip");
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {"1 exact small-n energies", 60, exact_small_n},
      {"2 icosahedron 1/r^2 energy 39", 30, icosahedron_r2},
      {"3 32-point 1/r^2 energy 803/2", 300, code32_r2},
      {"4 antiprism below cube", 60, antiprism_not_cube},
      {"5 newton + algdep round trip", 120, newton_algdep},
      {"6 multi-start gram agreement n=19", 600, gram_agreement},
      {"7 hessian certification n=4,6,12", 120, hessian_cert},
      {"8 symmetry fixtures", 30, symmetry_fixtures},
      {"9 property suites", 300, property_suites},
  };
  int failed = 0;
  for (const auto& cr : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > cr.budget_s) o.require(false, "over budget");
    std::printf("%s  %-36s %7.2fs / %.0fs%s%s\n", o.ok ? "PASS" : "FAIL", cr.name, s, cr.budget_s,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
