#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sphcode/big_real.hpp"

namespace sphcode {

/// Integer polynomial, coefficients in ascending degree. `canonical` makes the
/// leading coefficient positive and the content 1.
struct IntPolynomial {
  std::vector<mpz_class> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> c) : coeffs(std::move(c)) {}
  /// Strips leading zeros, divides by the content and fixes the sign.
  /// Throws DomainError for the zero polynomial.
  static IntPolynomial canonical(std::vector<mpz_class> c);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  mpz_class height() const;
  /// e.g. `7x^4 + 26x^2 - 9`
  std::string to_string() const;
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

struct RecoveryResult {
  IntPolynomial poly;
  int degree = 0;
  mpz_class height;
  BigReal residual;
  bool accepted = false;
};

/// Guard digits dropped from the lattice scale 10^(p - g).
inline constexpr int kAlgdepGuard = 10;

/// Integer-relation search over [1, x, ..., x^d] for d = 1..max_degree (only
/// even d and even powers when even_only). Accepts the first candidate whose
/// residual is below 10^(-p/2) * height * (d+1), whose height is below
/// 10^(p/4), and whose height sits at least three orders of magnitude under
/// the generic lattice scale 10^((p-g)/dim). Throws InsufficientPrecision for
/// p < 30.
RecoveryResult minimal_polynomial(const BigReal& x, int max_degree, bool even_only);

/// Horner evaluation of poly at x, at x's precision.
BigReal verify_root(const IntPolynomial& poly, const BigReal& x);

}  // namespace sphcode
