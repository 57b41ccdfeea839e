#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sphcode/big_real.hpp"
#include "sphcode/geometry.hpp"
#include "sphcode/potentials.hpp"
#include "sphcode/rng.hpp"

namespace sphcode {

struct AnnealConfig {
  long passes_per_round = 100000;
  BigReal scale_init = BigReal(0.1, BigReal::kDefaultDigits);
  BigReal scale_ratio = BigReal(0.8, BigReal::kDefaultDigits);
  BigReal final_precision = BigReal::pow10(-20, BigReal::kDefaultDigits);
  /// Consecutive non-improving rounds before giving up; 0 means 10 * precision.
  long max_rounds = 0;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct DescentConfig {
  BigReal alpha_numerator = BigReal(0.5, BigReal::kDefaultDigits);
  /// Step-size floor numerator; halving below floor_numerator / n raises NoProgress.
  BigReal floor_numerator = BigReal(0.1, BigReal::kDefaultDigits);
  BigReal tolerance = BigReal::pow10(-30, BigReal::kDefaultDigits);
  long max_iters = 200000;
  /// Largest displacement of any single point in one step.
  BigReal max_step = BigReal(0.1, BigReal::kDefaultDigits);
  /// Newton steps on the tangent chart once the residual drops below this.
  bool newton_polish = true;
  BigReal polish_below = BigReal(1e-2, BigReal::kDefaultDigits);
  /// Iterations without an energy decrease above round-off before NoProgress.
  long stall_limit = 2000;

  /// Defaults scaled to precision p: tolerance 10^(6-p).
  static DescentConfig for_precision(int digits);
  void validate() const;
};

enum class StopReason { Converged, StagnationLimit };
const char* to_string(StopReason r);

struct RunReport {
  PointSet final_points;
  EnergyValue final_energy;
  long iterations = 0;
  BigReal residual;
  /// (round or iteration, energy) samples.
  std::vector<std::pair<long, BigReal>> history;
  StopReason stop = StopReason::Converged;
};

/// Throws StagnationLimit when the run did not converge.
const RunReport& require_converged(const RunReport& r);

/// Adds scale * u (u uniform in [-1, 1]) to every coordinate, then re-normalizes.
/// A point whose perturbed vector vanishes is redrawn.
PointSet jiggle(const PointSet& p, const BigReal& scale, Rng& rng);

/// Improvement-only random search; the jiggle scale shrinks by scale_ratio
/// after every round.
RunReport percolating_anneal(const PointSet& p0, const Potential& pot, const AnnealConfig& cfg, Rng& rng);

/// One step: every point moves by alpha times its tangential force, then re-normalizes.
PointSet descent_step(const PointSet& p, const Potential& pot, const BigReal& alpha);

/// Tangential gradient descent with step halving, then Newton polishing.
/// Throws NoProgress when the step size hits its floor, the energy stalls at
/// round-off, or max_iters runs out.
RunReport descent(const PointSet& p0, const Potential& pot, const DescentConfig& cfg);

struct MultiStartResult {
  RunReport best;
  std::size_t best_index = 0;
  /// Per restart; empty signature and zero energy for a failed run.
  std::vector<GramSignature> signatures;
  std::vector<BigReal> energies;
  std::vector<bool> succeeded;
};

/// Independent descents from random starts; restart r draws from Rng(base_seed, r).
/// Restarts run concurrently. Throws the first error only if every run fails.
MultiStartResult multi_start(std::size_t n, const Potential& pot, long restarts, const DescentConfig& cfg,
                             std::uint64_t base_seed, int digits);

}  // namespace sphcode
