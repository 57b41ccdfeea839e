#pragma once

#include <mpfr.h>

#include <compare>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sphcode {

/// Arbitrary-precision real with a decimal-digit working precision.
///
/// Backed by an MPFR value whose binary precision is the smallest bit count
/// covering `digits` decimal digits. Binary operations produce a result at the
/// smaller of the two operand precisions. Values are immutable from the
/// outside except through the compound assignment operators, and a BigReal is
/// safe to share between threads as long as nobody mutates it.
class BigReal {
 public:
  static constexpr int kMinDigits = 16;
  static constexpr int kDefaultDigits = 40;

  BigReal();
  BigReal(long value, int digits);
  BigReal(int value, int digits) : BigReal(static_cast<long>(value), digits) {}
  BigReal(double value, int digits);
  BigReal(const mpz_class& value, int digits);

  /// Parses `[sign] digits [. digits] [e|E [sign] digits]`. Throws ParseError.
  static BigReal parse(std::string_view text, int digits);
  static BigReal zero(int digits) { return BigReal(0L, digits); }
  static BigReal one(int digits) { return BigReal(1L, digits); }
  static BigReal pi(int digits);
  /// 10^k at the given precision.
  static BigReal pow10(long k, int digits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  int digits() const { return digits_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  /// log10|x|, or a large negative number for zero. Double accuracy.
  double log10_abs() const;

  /// Decimal text with `significant` digits (defaults to the working
  /// precision).
  std::string to_string(int significant = 0) const;
  /// Shortest decimal text that reads back to exactly this value.
  std::string to_exact_string() const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get_mut() { return value_; }

 private:
  struct Uninit {};
  BigReal(Uninit, mpfr_prec_t bits, int digits);

  mpfr_t value_;
  int digits_;
};

/// Bits needed so that `digits` decimal digits round-trip.
mpfr_prec_t digits_to_bits(int digits);

BigReal with_precision(const BigReal& x, int digits);

enum class ElemKind { Sqrt, Log, Exp, Abs };
/// Throws DomainError for sqrt of a negative or log of a non-positive value.
BigReal elem(ElemKind kind, const BigReal& x);

BigReal sqrt(const BigReal& x);
BigReal log(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal abs(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal pow(const BigReal& x, long k);
BigReal square(const BigReal& x);
const BigReal& min(const BigReal& a, const BigReal& b);
const BigReal& max(const BigReal& a, const BigReal& b);

/// Nearest integer.
mpz_class round_to_mpz(const BigReal& x);

std::ostream& operator<<(std::ostream& os, const BigReal& x);

}  // namespace sphcode
