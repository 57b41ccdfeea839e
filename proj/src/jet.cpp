#include "sphcode/jet.hpp"

#include <algorithm>
#include <iterator>

#include "sphcode/errors.hpp"

namespace sphcode {

namespace {

struct Dense {
  std::vector<BigReal> g, h;
};

// Gradient and Hessian of `j` re-indexed onto the sorted variable list `u`.
Dense expand(const Jet& j, const std::vector<int>& u, int digits) {
  const std::size_t m = u.size();
  Dense d{std::vector<BigReal>(m, BigReal::zero(digits)), std::vector<BigReal>(m * m, BigReal::zero(digits))};
  std::vector<std::size_t> pos(j.width());
  std::size_t k = 0;
  for (std::size_t i = 0; i < j.width(); ++i) {
    while (u[k] != j.vars()[i]) ++k;
    pos[i] = k;
  }
  for (std::size_t a = 0; a < j.width(); ++a) {
    d.g[pos[a]] = j.grad(a);
    for (std::size_t b = 0; b < j.width(); ++b) d.h[pos[a] * m + pos[b]] = j.hess(a, b);
  }
  return d;
}

std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> u;
  u.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

int digits_of(const Jet& a, const Jet& b) { return std::min(a.value().digits(), b.value().digits()); }

}  // namespace

Jet Jet::constant(BigReal v) {
  Jet j;
  j.v_ = std::move(v);
  return j;
}

Jet Jet::variable(int index, BigReal v) {
  Jet j;
  const int d = v.digits();
  j.v_ = std::move(v);
  j.vars_ = {index};
  j.g_ = {BigReal::one(d)};
  j.h_ = {BigReal::zero(d)};
  return j;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r.v_ = -r.v_;
  for (auto& x : r.g_) x = -x;
  for (auto& x : r.h_) x = -x;
  return r;
}

Jet operator*(const Jet& a, const BigReal& s) {
  Jet r = a;
  r.v_ *= s;
  for (auto& x : r.g_) x *= s;
  for (auto& x : r.h_) x *= s;
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  if (b.vars_.empty()) {
    Jet r = a;
    r.v_ += b.v_;
    return r;
  }
  if (a.vars_.empty() || a.vars_ == b.vars_) {
    Jet r = b;
    r.v_ += a.v_;
    for (std::size_t k = 0; k < a.g_.size(); ++k) r.g_[k] += a.g_[k];
    for (std::size_t k = 0; k < a.h_.size(); ++k) r.h_[k] += a.h_[k];
    return r;
  }
  const int d = digits_of(a, b);
  Jet r;
  r.vars_ = merge(a.vars_, b.vars_);
  Dense da = expand(a, r.vars_, d), db = expand(b, r.vars_, d);
  r.v_ = a.v_ + b.v_;
  r.g_ = std::move(da.g);
  r.h_ = std::move(da.h);
  for (std::size_t k = 0; k < r.g_.size(); ++k) r.g_[k] += db.g[k];
  for (std::size_t k = 0; k < r.h_.size(); ++k) r.h_[k] += db.h[k];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet operator*(const Jet& a, const Jet& b) {
  if (b.vars_.empty()) return a * b.v_;
  if (a.vars_.empty()) return b * a.v_;
  const int d = digits_of(a, b);
  Jet r;
  r.vars_ = merge(a.vars_, b.vars_);
  const std::size_t m = r.vars_.size();
  Dense da = expand(a, r.vars_, d), db = expand(b, r.vars_, d);
  r.v_ = a.v_ * b.v_;
  r.g_.resize(m);
  r.h_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) r.g_[i] = a.v_ * db.g[i] + b.v_ * da.g[i];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      r.h_[i * m + j] = a.v_ * db.h[i * m + j] + b.v_ * da.h[i * m + j] + da.g[i] * db.g[j] + db.g[i] * da.g[j];
    }
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * pow(b, -1); }

Jet Jet::chain(BigReal f0, const BigReal& f1, const BigReal& f2) const {
  Jet r;
  r.vars_ = vars_;
  const std::size_t m = vars_.size();
  r.g_.resize(m);
  r.h_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a) r.g_[a] = f1 * g_[a];
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) r.h_[a * m + b] = f1 * h_[a * m + b] + f2 * g_[a] * g_[b];
  }
  r.v_ = std::move(f0);
  return r;
}

void Jet::add_to(BigReal& value, std::vector<BigReal>& grad, std::vector<BigReal>& hess, std::size_t arity) const {
  value += v_;
  const std::size_t m = vars_.size();
  for (std::size_t a = 0; a < m; ++a) {
    grad[vars_[a]] += g_[a];
    for (std::size_t b = 0; b < m; ++b) hess[vars_[a] * arity + vars_[b]] += h_[a * m + b];
  }
}

Jet sqrt(const Jet& a) {
  const BigReal& v = a.value();
  if (a.width() == 0) return Jet::constant(sqrt(v));
  if (!(v.sign() > 0)) throw DomainError("sqrt derivative at non-positive value " + v.to_string(8));
  BigReal f0 = sqrt(v);
  BigReal f1 = 1L / (2L * f0);
  BigReal f2 = -f1 / (2L * v);
  return a.chain(std::move(f0), f1, f2);
}

Jet log(const Jet& a) {
  const BigReal& v = a.value();
  BigReal inv = 1L / v;
  return a.chain(log(v), inv, -(inv * inv));
}

Jet pow(const Jet& a, long num, long den) {
  const BigReal& v = a.value();
  if (den != 1 && den != 2) throw DomainError("jet exponents must have denominator 1 or 2");
  if (den == 2 && num % 2 == 0) {
    num /= 2;
    den = 1;
  }
  BigReal f0 = den == 1 ? pow(v, num) : pow(sqrt(v), num);
  if (a.width() == 0) return Jet::constant(std::move(f0));
  if (v.is_zero()) throw DomainError("power derivative at zero");
  // e = num/den; f' = e f / v, f'' = e (e - 1) f / v^2
  BigReal e = BigReal(num, v.digits()) / den;
  BigReal f1 = e * f0 / v;
  BigReal f2 = (e - 1L) * f1 / v;
  return a.chain(std::move(f0), f1, f2);
}

Jet sin(const Jet& a) {
  const BigReal& v = a.value();
  BigReal s = sin(v);
  return a.chain(s, cos(v), -s);
}

Jet cos(const Jet& a) {
  const BigReal& v = a.value();
  BigReal c = cos(v);
  return a.chain(c, -sin(v), -c);
}

Jet square(const Jet& a) { return a * a; }

}  // namespace sphcode
