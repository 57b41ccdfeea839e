#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sphcode/big_real.hpp"
#include "sphcode/geometry.hpp"

namespace sphcode {

/// Pair potential: logarithmic, or Riesz 1/d^s for integer s >= 1.
struct Potential {
  enum class Kind { Log, Riesz };
  Kind kind = Kind::Riesz;
  int s = 1;

  static Potential log() { return {Kind::Log, 0}; }
  static Potential riesz(int s);
  static Potential coulomb() { return riesz(1); }
  static Potential inverse_square() { return riesz(2); }

  /// Accepts `log`, `r1`, `r2` and `rs:<k>`. Throws ParseError.
  static Potential parse(std::string_view token);
  /// `log`, `r1`, `r2`, or `rs:<k>` for s > 2.
  std::string token() const;

  bool is_log() const { return kind == Kind::Log; }
  friend bool operator==(const Potential&, const Potential&) = default;
};

struct EnergyValue {
  BigReal value;
  Potential potential;
  std::size_t n = 0;
};

/// -log d, or d^-s. Throws DomainError when d <= 0.
BigReal pair_potential(const BigReal& d, const Potential& pot);

/// Sum of the pair potential over unordered pairs i < j.
/// Throws CoincidentPoints when two points coincide.
EnergyValue energy(const PointSet& p, const Potential& pot);

/// Negative energy gradient at point i as an ambient vector.
Vec3 force(const PointSet& p, std::size_t i, const Potential& pot);
/// Forces on every point.
std::vector<Vec3> forces(const PointSet& p, const Potential& pot);

/// F - (F.x) x for a unit x.
Vec3 tangential_component(const Point3& x, const Vec3& f);

/// Largest tangential force magnitude over all points.
BigReal residual(const PointSet& p, const Potential& pot);

}  // namespace sphcode
