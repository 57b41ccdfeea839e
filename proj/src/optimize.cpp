#include "sphcode/optimize.hpp"

#include <omp.h>

#include <exception>
#include <optional>

#include "sphcode/errors.hpp"
#include "sphcode/kernels.hpp"
#include "sphcode/linalg.hpp"
#include "sphcode/verify.hpp"

namespace sphcode {

void AnnealConfig::validate() const {
  if (passes_per_round < 1) throw DomainError("passes_per_round must be >= 1");
  if (!(scale_ratio > 0L) || !(scale_ratio < 1L)) throw DomainError("scale_ratio must lie in (0, 1)");
  if (!(scale_init > 0L)) throw DomainError("scale_init must be positive");
  if (!(final_precision > 0L)) throw DomainError("final_precision must be positive");
  if (max_rounds < 0) throw DomainError("max_rounds must be >= 0");
}

DescentConfig DescentConfig::for_precision(int digits) {
  DescentConfig c;
  c.alpha_numerator = BigReal(0.5, digits);
  c.floor_numerator = BigReal(0.1, digits);
  c.tolerance = BigReal::pow10(6 - digits, digits);
  c.max_step = BigReal(0.1, digits);
  c.polish_below = BigReal(1e-2, digits);
  return c;
}

void DescentConfig::validate() const {
  if (!(alpha_numerator > 0L) || alpha_numerator > 1L) throw DomainError("alpha_numerator must lie in (0, 1]");
  if (!(floor_numerator > 0L) || floor_numerator > alpha_numerator) {
    throw DomainError("floor_numerator must lie in (0, alpha_numerator]");
  }
  if (!(tolerance > 0L)) throw DomainError("tolerance must be positive");
  if (max_iters < 0) throw DomainError("max_iters must be >= 0");
  if (!(max_step > 0L)) throw DomainError("max_step must be positive");
}

const char* to_string(StopReason r) { return r == StopReason::Converged ? "converged" : "stagnation-limit"; }

const RunReport& require_converged(const RunReport& r) {
  if (r.stop != StopReason::Converged) {
    throw StagnationLimit("no improvement for the configured number of rounds (energy " +
                          r.final_energy.value.to_string(20) + ")");
  }
  return r;
}

PointSet jiggle(const PointSet& p, const BigReal& scale, Rng& rng) {
  if (!(scale > 0L)) throw DomainError("jiggle scale must be positive");
  const int digits = p.digits();
  std::vector<Point3> out;
  out.reserve(p.size());
  for (const auto& x : p) {
    for (;;) {
      Vec3 v{x.x + scale * rng.next_uniform(digits), x.y + scale * rng.next_uniform(digits),
             x.z + scale * rng.next_uniform(digits)};
      try {
        out.push_back(normalize(v));
        break;
      } catch (const ZeroVector&) {
      }
    }
  }
  return PointSet::trusted(std::move(out));
}

namespace {

BigReal energy_noise(const BigReal& e, int digits) {
  return roundoff_tol(digits) * max(BigReal::one(digits), abs(e));
}

}  // namespace

RunReport percolating_anneal(const PointSet& p0, const Potential& pot, const AnnealConfig& cfg, Rng& rng) {
  cfg.validate();
  const int digits = p0.digits();
  const long max_rounds = cfg.max_rounds > 0 ? cfg.max_rounds : 10L * digits;
  PointSet p = p0;
  BigReal e = kernels::energy_parallel(p, pot);
  BigReal scale = with_precision(cfg.scale_init, digits);
  RunReport rep;
  rep.history.emplace_back(0, e);
  long idle = 0;
  long round = 0;
  for (;;) {
    ++round;
    bool improved = false;
    BigReal drop = BigReal::zero(digits);
    for (long pass = 0; pass < cfg.passes_per_round; ++pass) {
      PointSet q = jiggle(p, scale, rng);
      BigReal eq;
      try {
        eq = kernels::energy_parallel(q, pot);
      } catch (const CoincidentPoints&) {
        continue;
      }
      if (eq < e) {
        drop += e - eq;
        p = std::move(q);
        e = std::move(eq);
        improved = true;
      }
    }
    rep.history.emplace_back(round, e);
    scale *= cfg.scale_ratio;
    if (improved) {
      idle = 0;
      if (drop < cfg.final_precision) {
        rep.stop = StopReason::Converged;
        break;
      }
    } else if (++idle >= max_rounds) {
      rep.stop = StopReason::StagnationLimit;
      break;
    }
  }
  rep.iterations = round;
  rep.residual = residual(p, pot);
  rep.final_energy = {e, pot, p.size()};
  rep.final_points = std::move(p);
  return rep;
}

namespace {

// Moves each point along alpha * T; with a cap, the whole step is scaled so
// that no point moves further than cap.
PointSet step_along(const PointSet& p, const std::vector<Vec3>& f, const BigReal& alpha, const BigReal* cap) {
  const std::size_t n = p.size();
  std::vector<Vec3> t(n);
  BigReal factor = alpha;
  if (cap) {
    BigReal longest = BigReal::zero(p.digits());
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = tangential_component(p[i], f[i]);
      BigReal len = norm(t[i]);
      if (len > longest) longest = len;
    }
    if (alpha * longest > *cap) factor = *cap / longest;
  } else {
    for (std::size_t i = 0; i < n; ++i) t[i] = tangential_component(p[i], f[i]);
  }
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(normalize(p[i] + t[i] * factor));
  return PointSet::trusted(std::move(out));
}

BigReal max_tangential(const PointSet& p, const std::vector<Vec3>& f) {
  BigReal worst = BigReal::zero(p.digits());
  for (std::size_t i = 0; i < p.size(); ++i) {
    BigReal t = norm(tangential_component(p[i], f[i]));
    if (t > worst) worst = t;
  }
  return worst;
}

// Damped Newton step on the tangent chart. The rotational null space is lifted
// by adding a multiple of its projector to the Hessian.
std::optional<PointSet> newton_step(const PointSet& p, const Potential& pot, const std::vector<Vec3>& f,
                                    const BigReal& damping) {
  const std::size_t n = p.size();
  const std::size_t m = 2 * n;
  const int digits = p.digits();
  Matrix h = hessian(p, pot);
  TangentBasis tb = tangent_basis(p);

  BigReal trace = BigReal::zero(digits);
  for (std::size_t k = 0; k < m; ++k) trace += abs(h(k, k));
  const BigReal lift = max(BigReal::one(digits), trace / static_cast<long>(m));

  std::vector<std::vector<BigReal>> basis;
  const BigReal tol = half_precision_tol(digits);
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::zero(digits);
    (k == 0 ? e.x : k == 1 ? e.y : e.z) = BigReal::one(digits);
    std::vector<BigReal> v(m);
    for (std::size_t i = 0; i < n; ++i) {
      Vec3 g = cross(e, p[i]);
      v[2 * i] = dot(g, tb.t1[i]);
      v[2 * i + 1] = dot(g, tb.t2[i]);
    }
    for (const auto& q : basis) {
      BigReal c = BigReal::zero(digits);
      for (std::size_t a = 0; a < m; ++a) c += v[a] * q[a];
      for (std::size_t a = 0; a < m; ++a) v[a] -= c * q[a];
    }
    BigReal len2 = BigReal::zero(digits);
    for (const auto& x : v) len2 += x * x;
    BigReal len = sqrt(len2);
    if (len < tol) continue;
    for (auto& x : v) x /= len;
    basis.push_back(std::move(v));
  }
  for (const auto& q : basis) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) h(a, b) += lift * q[a] * q[b];
    }
  }
  for (std::size_t a = 0; a < m; ++a) h(a, a) += damping;

  std::vector<BigReal> rhs(m);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[2 * i] = dot(f[i], tb.t1[i]);
    rhs[2 * i + 1] = dot(f[i], tb.t2[i]);
  }
  // an indefinite system means a saddle is nearby; leave it to descent
  std::vector<BigReal> delta = solve_cholesky(std::move(h), std::move(rhs));
  if (delta.empty()) return std::nullopt;
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(normalize(p[i] + tb.t1[i] * delta[2 * i] + tb.t2[i] * delta[2 * i + 1]));
  }
  return PointSet::trusted(std::move(out));
}

}  // namespace

PointSet descent_step(const PointSet& p, const Potential& pot, const BigReal& alpha) {
  if (alpha.sign() < 0) throw DomainError("descent step size must be non-negative");
  if (p.size() < 2 || alpha.is_zero()) return p;
  return step_along(p, kernels::forces_parallel(p, pot), alpha, nullptr);
}

RunReport descent(const PointSet& p0, const Potential& pot, const DescentConfig& cfg) {
  cfg.validate();
  const std::size_t n = p0.size();
  const int digits = n ? p0.digits() : BigReal::kDefaultDigits;
  RunReport rep;
  if (n < 2) {
    rep.final_points = p0;
    rep.final_energy = {BigReal::zero(digits), pot, n};
    rep.residual = BigReal::zero(digits);
    rep.history.emplace_back(0, BigReal::zero(digits));
    return rep;
  }
  const long nl = static_cast<long>(n);
  const BigReal alpha_max = with_precision(cfg.alpha_numerator, digits) / nl;
  const BigReal alpha_floor = with_precision(cfg.floor_numerator, digits) / nl;
  const BigReal cap = with_precision(cfg.max_step, digits);

  PointSet p = p0;
  BigReal e = kernels::energy_parallel(p, pot);
  std::vector<Vec3> f = kernels::forces_parallel(p, pot);
  BigReal r = max_tangential(p, f);
  BigReal alpha = alpha_max;
  // Newton is retried only after descent has pushed the residual below this gate.
  BigReal polish_gate = with_precision(cfg.polish_below, digits);
  rep.history.emplace_back(0, e);

  long it = 0;
  long stalled = 0;
  while (!(r < cfg.tolerance)) {
    if (it >= cfg.max_iters) {
      throw NoProgress("descent reached " + std::to_string(cfg.max_iters) + " iterations with residual " +
                       r.to_string(6));
    }
    ++it;
    const BigReal noise = energy_noise(e, digits);
    if (++stalled > cfg.stall_limit) {
      throw NoProgress("energy has not decreased for " + std::to_string(cfg.stall_limit) +
                       " iterations (residual " + r.to_string(6) + ")");
    }
    if (cfg.newton_polish && r < polish_gate) {
      std::optional<PointSet> q = newton_step(p, pot, f, r);
      if (q) {
        try {
          BigReal eq = kernels::energy_parallel(*q, pot);
          std::vector<Vec3> fq = kernels::forces_parallel(*q, pot);
          BigReal rq = max_tangential(*q, fq);
          if (eq < e - noise || (eq <= e + noise && rq < r)) {
            if (eq < e - noise) stalled = 0;
            p = std::move(*q);
            e = std::move(eq);
            f = std::move(fq);
            r = std::move(rq);
            rep.history.emplace_back(it, e);
            continue;
          }
        } catch (const CoincidentPoints&) {
        }
      }
      polish_gate = r / 10L;
    }
    PointSet q = step_along(p, f, alpha, &cap);
    BigReal eq;
    bool ok = true;
    try {
      eq = kernels::energy_parallel(q, pot);
    } catch (const CoincidentPoints&) {
      ok = false;
    }
    if (!ok || eq > e + noise) {
      alpha /= 2L;
      if (alpha < alpha_floor) {
        throw NoProgress("energy increases even at step size " + alpha_floor.to_string(6) + " (residual " +
                         r.to_string(6) + ")");
      }
      continue;
    }
    if (eq < e - noise) stalled = 0;
    p = std::move(q);
    e = std::move(eq);
    f = kernels::forces_parallel(p, pot);
    r = max_tangential(p, f);
    alpha = min(alpha_max, alpha * 2L);
    if (it % 100 == 0) rep.history.emplace_back(it, e);
  }
  rep.history.emplace_back(it, e);
  rep.iterations = it;
  rep.residual = r;
  rep.final_energy = {e, pot, n};
  rep.final_points = std::move(p);
  return rep;
}

MultiStartResult multi_start(std::size_t n, const Potential& pot, long restarts, const DescentConfig& cfg,
                             std::uint64_t base_seed, int digits) {
  if (restarts < 1) throw DomainError("restarts must be >= 1");
  const std::size_t count = static_cast<std::size_t>(restarts);
  std::vector<std::optional<RunReport>> runs(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < count; ++k) {
    try {
      Rng rng(base_seed, k);
      PointSet start = random_point_set(n, rng, digits);
      runs[k] = descent(start, pot, cfg);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  MultiStartResult out;
  std::optional<std::size_t> best;
  const BigReal tol = half_precision_tol(digits);
  for (std::size_t k = 0; k < count; ++k) {
    if (!runs[k]) {
      out.signatures.emplace_back();
      out.energies.push_back(BigReal::zero(digits));
      out.succeeded.push_back(false);
      continue;
    }
    out.signatures.push_back(gram_signature(gram_matrix(runs[k]->final_points), tol));
    out.energies.push_back(runs[k]->final_energy.value);
    out.succeeded.push_back(true);
    if (!best || runs[k]->final_energy.value < runs[*best]->final_energy.value) best = k;
  }
  if (!best) std::rethrow_exception(errors[0]);
  out.best_index = *best;
  out.best = std::move(*runs[*best]);
  return out;
}

}  // namespace sphcode
