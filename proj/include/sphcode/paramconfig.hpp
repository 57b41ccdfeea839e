#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sphcode/big_real.hpp"
#include "sphcode/geometry.hpp"
#include "sphcode/linalg.hpp"
#include "sphcode/potentials.hpp"

namespace sphcode {

/// A coordinate slot: a named free variable (optionally negated) or a
/// closed-form constant kept as source text, e.g. `0.25`, `sqrt(1/3)`,
/// `-sqrt((5+sqrt(5))/10)`.
struct ParamRef {
  enum class Kind { Const, Var };
  Kind kind = Kind::Const;
  std::string text;  // Const: expression source
  std::string name;  // Var: variable name
  bool negate = false;
  int index = -1;  // Var: resolved by ConfigSpec

  static ParamRef constant(std::string expr);
  static ParamRef var(std::string name, bool negate = false);
  /// `$name`, `-$name`, or a constant expression. Throws ParseError.
  static ParamRef parse(std::string_view text);

  bool is_var() const { return kind == Kind::Var; }
  std::string to_string() const;
  friend bool operator==(const ParamRef& a, const ParamRef& b) {
    return a.kind == b.kind && a.text == b.text && a.name == b.name && a.negate == b.negate;
  }
};

/// Evaluates a constant expression (decimals, sqrt(), + - * /, parentheses).
/// Throws ParseError.
BigReal eval_constant(std::string_view expr, int digits);

struct Pole {
  int z_sign = 1;
  friend bool operator==(const Pole&, const Pole&) = default;
};
/// k vertices at height z; vertex m at angle 2*pi*(phase + m/k), phase in turns.
struct Ring {
  int k = 2;
  ParamRef z, phase;
  friend bool operator==(const Ring&, const Ring&) = default;
};
/// k vertices at height z; the first at (x, +sqrt(1-z^2-x^2), z), the rest
/// rotated about the z axis by multiples of 2*pi/k.
struct OffsetRing {
  int k = 2;
  ParamRef z, x;
  friend bool operator==(const OffsetRing&, const OffsetRing&) = default;
};
/// (x, y_sign * sqrt(1-z^2-x^2), z).
struct FreePoint {
  ParamRef z, x;
  int y_sign = 1;
  friend bool operator==(const FreePoint&, const FreePoint&) = default;
};

using Generator = std::variant<Pole, Ring, OffsetRing, FreePoint>;

/// Spec-file line for one generator, e.g. `ring 5 z=$a phase=1/2`.
std::string to_line(const Generator& g);

class ConfigSpec {
 public:
  ConfigSpec() = default;
  /// Resolves variable names in order of first appearance. Throws DomainError
  /// for a ring with k < 2.
  explicit ConfigSpec(std::vector<Generator> generators);

  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t arity() const { return names_.size(); }
  std::size_t point_count() const;
  friend bool operator==(const ConfigSpec& a, const ConfigSpec& b) { return a.generators_ == b.generators_; }

 private:
  std::vector<Generator> generators_;
  std::vector<std::string> names_;
};

struct ParamVector {
  std::vector<std::string> names;
  std::vector<BigReal> values;

  int digits() const;
  std::size_t size() const { return values.size(); }
  friend bool operator==(const ParamVector&, const ParamVector&) = default;
};

/// Values re-expressed at `digits`.
ParamVector with_precision(const ParamVector& p, int digits);

/// Throws DomainViolation (naming the generator and radicand) for a negative
/// radicand, SizeMismatch when the vector does not match the spec's arity.
PointSet build_points(const ConfigSpec& spec, const ParamVector& params);

BigReal param_energy(const ConfigSpec& spec, const ParamVector& params, const Potential& pot);

struct ParamDerivatives {
  BigReal energy;
  std::vector<BigReal> gradient;
  Matrix jacobian;
};

/// Energy, gradient and second-derivative matrix in one forward pass.
/// Throws DomainViolation when a radicand is not strictly positive.
ParamDerivatives param_derivatives(const ConfigSpec& spec, const ParamVector& params, const Potential& pot);
std::vector<BigReal> param_gradient(const ConfigSpec& spec, const ParamVector& params, const Potential& pot);
Matrix param_jacobian(const ConfigSpec& spec, const ParamVector& params, const Potential& pot);

struct NewtonStep {
  int digits;          // working precision of the step
  BigReal grad_norm;   // |V| before the step
  BigReal step_norm;   // |h|
};

struct NewtonReport {
  ParamVector params;
  BigReal grad_norm;
  std::vector<NewtonStep> steps;
};

/// Newton iteration J h = -V on a precision ladder (working digits about twice
/// the digits already correct, capped at target + 10). Stops once
/// |V| < 10^(5 - target) at full working precision; the result carries
/// target + 10 digits. Throws SingularJacobian or Diverged.
NewtonReport newton_refine_report(const ConfigSpec& spec, const ParamVector& params0, const Potential& pot,
                                  int target_digits);
ParamVector newton_refine(const ConfigSpec& spec, const ParamVector& params0, const Potential& pot,
                          int target_digits);

}  // namespace sphcode
