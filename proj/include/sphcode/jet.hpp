#pragma once

#include <vector>

#include "sphcode/big_real.hpp"

namespace sphcode {

/// Second-order forward-mode value over a short sorted list of variables:
/// value, gradient and (full, symmetric) Hessian restricted to `vars`.
class Jet {
 public:
  Jet() = default;
  static Jet constant(BigReal v);
  static Jet variable(int index, BigReal v);

  const BigReal& value() const { return v_; }
  const std::vector<int>& vars() const { return vars_; }
  std::size_t width() const { return vars_.size(); }
  const BigReal& grad(std::size_t k) const { return g_[k]; }
  const BigReal& hess(std::size_t a, std::size_t b) const { return h_[a * vars_.size() + b]; }

  Jet operator-() const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const BigReal& s);
  friend Jet operator*(const BigReal& s, const Jet& a) { return a * s; }

  /// f(a) given f(v), f'(v), f''(v) at v = a.value().
  Jet chain(BigReal f0, const BigReal& f1, const BigReal& f2) const;

  /// Accumulates into a dense value/gradient/Hessian of dimension `arity`.
  void add_to(BigReal& value, std::vector<BigReal>& grad, std::vector<BigReal>& hess, std::size_t arity) const;

 private:
  BigReal v_;
  std::vector<int> vars_;
  std::vector<BigReal> g_;
  std::vector<BigReal> h_;
};

/// Throws DomainError for a non-positive argument.
Jet sqrt(const Jet& a);
Jet log(const Jet& a);
/// a^e for a rational exponent num/den (a > 0 unless e is a non-negative integer).
Jet pow(const Jet& a, long num, long den = 1);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet square(const Jet& a);

}  // namespace sphcode
