#include "sphcode/big_real.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

#include "sphcode/errors.hpp"

namespace sphcode {

namespace {

void check_digits(int digits) {
  if (digits < BigReal::kMinDigits) {
    throw DomainError("precision must be at least " + std::to_string(BigReal::kMinDigits) +
                      " digits, got " + std::to_string(digits));
  }
}

bool valid_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = 0, frac_digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++int_digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++frac_digits;
  }
  if (int_digits + frac_digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362347870319429489390175864831393));
}

BigReal::BigReal(Uninit, mpfr_prec_t bits, int digits) : digits_(digits) { mpfr_init2(value_, bits); }

BigReal::BigReal() : BigReal(0L, kDefaultDigits) {}

BigReal::BigReal(long value, int digits) : digits_(digits) {
  check_digits(digits);
  mpfr_init2(value_, digits_to_bits(digits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(double value, int digits) : digits_(digits) {
  check_digits(digits);
  mpfr_init2(value_, digits_to_bits(digits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& value, int digits) : digits_(digits) {
  check_digits(digits);
  mpfr_init2(value_, digits_to_bits(digits));
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, int digits) {
  check_digits(digits);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!valid_decimal(text)) throw ParseError("malformed decimal '" + std::string(text) + "'", 0);
  BigReal r(Uninit{}, digits_to_bits(digits), digits);
  std::string owned(text);
  mpfr_strtofr(r.value_, owned.c_str(), nullptr, 10, MPFR_RNDN);
  return r;
}

BigReal BigReal::pi(int digits) {
  check_digits(digits);
  BigReal r(Uninit{}, digits_to_bits(digits), digits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow10(long k, int digits) {
  check_digits(digits);
  BigReal r(Uninit{}, digits_to_bits(digits), digits);
  mpfr_set_ui(r.value_, 10, MPFR_RNDN);
  mpfr_pow_si(r.value_, r.value_, k, MPFR_RNDN);
  return r;
}

BigReal::BigReal(const BigReal& other) : digits_(other.digits_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
  // Steal the limbs; leave `other` as a valid minimal-precision zero.
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, MPFR_PREC_MIN);
  mpfr_set_zero(other.value_, 1);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this == &other) return *this;
  if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) mpfr_set_prec(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
  digits_ = other.digits_;
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this == &other) return *this;
  mpfr_swap(value_, other.value_);
  std::swap(digits_, other.digits_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

double BigReal::log10_abs() const {
  if (mpfr_zero_p(value_)) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpfr_get_d_2exp(&exp2, value_, MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398119521;
}

std::string BigReal::to_string(int significant) const {
  if (significant <= 0) significant = digits_;
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant), value_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^exp10
  const long e = static_cast<long>(exp10);
  const long n = static_cast<long>(mant.size());
  std::string out;
  if (e > 0 && e <= n) {
    out = mant.substr(0, static_cast<std::size_t>(e));
    if (e < n) out += "." + mant.substr(static_cast<std::size_t>(e));
  } else if (e <= 0 && e > -6) {
    out = "0." + std::string(static_cast<std::size_t>(-e), '0') + mant;
  } else {
    out = mant.substr(0, 1);
    if (n > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(e - 1);
  }
  return sign + out;
}

std::string BigReal::to_exact_string() const {
  const auto n = mpfr_get_str_ndigits(10, mpfr_get_prec(value_));
  return to_string(static_cast<int>(n));
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  if (rhs.bits() < bits()) {
    *this = *this + rhs;
  } else {
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  if (rhs.bits() < bits()) {
    *this = *this - rhs;
  } else {
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  if (rhs.bits() < bits()) {
    *this = *this * rhs;
  } else {
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.bits() < bits()) {
    *this = *this / rhs;
  } else {
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

namespace {

// Result precision of a binary operation.
inline const BigReal& narrower(const BigReal& a, const BigReal& b) { return a.bits() <= b.bits() ? a : b; }

}  // namespace

#define SPHCODE_BINOP(op, fn)                                                   \
  BigReal operator op(const BigReal& a, const BigReal& b) {                     \
    const BigReal& n = narrower(a, b);                                          \
    BigReal r(BigReal::Uninit{}, n.bits(), n.digits());                         \
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);                                \
    return r;                                                                   \
  }

SPHCODE_BINOP(+, mpfr_add)
SPHCODE_BINOP(-, mpfr_sub)
SPHCODE_BINOP(*, mpfr_mul)
SPHCODE_BINOP(/, mpfr_div)
#undef SPHCODE_BINOP

BigReal operator+(const BigReal& a, long b) {
  BigReal r(BigReal::Uninit{}, a.bits(), a.digits());
  mpfr_add_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, long b) {
  BigReal r(BigReal::Uninit{}, a.bits(), a.digits());
  mpfr_sub_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal r(BigReal::Uninit{}, b.bits(), b.digits());
  mpfr_si_sub(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, long b) {
  BigReal r(BigReal::Uninit{}, a.bits(), a.digits());
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, long b) {
  BigReal r(BigReal::Uninit{}, a.bits(), a.digits());
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal r(BigReal::Uninit{}, b.bits(), b.digits());
  mpfr_si_div(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigReal with_precision(const BigReal& x, int digits) {
  BigReal r(0L, digits);
  mpfr_set(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of negative value " + x.to_string(12));
  BigReal r(x);
  mpfr_sqrt(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("log of non-positive value " + x.to_string(12));
  BigReal r(x);
  mpfr_log(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal exp(const BigReal& x) {
  BigReal r(x);
  mpfr_exp(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r(x);
  mpfr_abs(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal sin(const BigReal& x) {
  BigReal r(x);
  mpfr_sin(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal cos(const BigReal& x) {
  BigReal r(x);
  mpfr_cos(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long k) {
  BigReal r(x);
  mpfr_pow_si(r.get_mut(), x.get(), k, MPFR_RNDN);
  return r;
}

BigReal square(const BigReal& x) {
  BigReal r(x);
  mpfr_sqr(r.get_mut(), x.get(), MPFR_RNDN);
  return r;
}

BigReal elem(ElemKind kind, const BigReal& x) {
  switch (kind) {
    case ElemKind::Sqrt: return sqrt(x);
    case ElemKind::Log: return log(x);
    case ElemKind::Exp: return exp(x);
    case ElemKind::Abs: return abs(x);
  }
  throw DomainError("unknown elementary function");
}

const BigReal& min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
const BigReal& max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

mpz_class round_to_mpz(const BigReal& x) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDN);
  return z;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

}  // namespace sphcode
