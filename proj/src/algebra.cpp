#include "sphcode/algebra.hpp"

#include <sstream>

#include "sphcode/errors.hpp"
#include "sphcode/lattice.hpp"

namespace sphcode {

IntPolynomial IntPolynomial::canonical(std::vector<mpz_class> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw DomainError("zero polynomial has no canonical form");
  mpz_class g = 0;
  for (const auto& v : c) g = gcd(g, v);
  if (c.back() < 0) g = -g;
  for (auto& v : c) v /= g;
  return IntPolynomial(std::move(c));
}

mpz_class IntPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& v : coeffs) {
    if (abs(v) > h) h = abs(v);
  }
  return h;
}

std::string IntPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const mpz_class& c = coeffs[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k >= 1) os << 'x';
    if (k >= 2) os << '^' << k;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

BigReal verify_root(const IntPolynomial& poly, const BigReal& x) {
  const int d = x.digits();
  BigReal acc = BigReal::zero(d);
  for (std::size_t k = poly.coeffs.size(); k-- > 0;) {
    acc *= x;
    acc += BigReal(poly.coeffs[k], d);
  }
  return acc;
}

namespace {

struct Candidate {
  IntPolynomial poly;
  mpz_class height;
  BigReal residual;
  double log_height = 0;
};

// Shortest lattice relation among powers y^0..y^m, where y = x or x^2;
// `stride` maps power k of y to power stride*k of x.
Candidate search(const BigReal& x, int m, int stride) {
  const int p = x.digits();
  const BigReal y = stride == 1 ? x : x * x;
  const BigReal scale = BigReal::pow10(p - kAlgdepGuard, p);
  const std::size_t dim = static_cast<std::size_t>(m) + 1;
  std::vector<IntVector> basis(dim, IntVector(dim + 1, 0));
  BigReal pw = BigReal::one(p);
  for (std::size_t k = 0; k < dim; ++k) {
    basis[k][k] = 1;
    basis[k][dim] = round_to_mpz(pw * scale);
    pw *= y;
  }
  std::vector<IntVector> red = lattice_reduce(std::move(basis));
  std::vector<mpz_class> c(static_cast<std::size_t>(stride * m) + 1, 0);
  for (std::size_t k = 0; k < dim; ++k) c[k * static_cast<std::size_t>(stride)] = red[0][k];
  Candidate cand;
  bool nonzero = false;
  for (const auto& v : c) nonzero = nonzero || v != 0;
  if (!nonzero) {
    cand.poly = IntPolynomial({mpz_class(1)});
    cand.height = 1;
    cand.residual = BigReal::one(p);
    return cand;
  }
  cand.poly = IntPolynomial::canonical(std::move(c));
  cand.height = cand.poly.height();
  cand.residual = abs(verify_root(cand.poly, x));
  cand.log_height = BigReal(cand.height, p).log10_abs();
  return cand;
}

}  // namespace

RecoveryResult minimal_polynomial(const BigReal& x, int max_degree, bool even_only) {
  const int p = x.digits();
  if (p < 30) throw InsufficientPrecision("algebraic recovery needs at least 30 digits, have " + std::to_string(p));
  if (max_degree < 1) throw DomainError("max_degree must be >= 1");
  const int stride = even_only ? 2 : 1;
  RecoveryResult best;
  bool have_best = false;
  for (int d = stride; d <= max_degree; d += stride) {
    const int m = d / stride;
    Candidate c = search(x, m, stride);
    if (c.poly.degree() < 1) continue;
    const int dim = m + 1;
    const BigReal bound = BigReal::pow10(-(p / 2), p) * BigReal(c.height, p) * static_cast<long>(c.poly.degree() + 1);
    const bool small_residual = c.residual < bound;
    const bool small_height = c.log_height < p / 4.0;
    const bool snapped = c.log_height <= static_cast<double>(p - kAlgdepGuard) / dim - 3.0;
    RecoveryResult r{c.poly, c.poly.degree(), c.height, c.residual, small_residual && small_height && snapped};
    if (r.accepted) return r;
    if (!have_best || r.residual < best.residual) {
      best = std::move(r);
      have_best = true;
    }
  }
  if (!have_best) throw DomainError("no candidate relation found");
  return best;
}

}  // namespace sphcode
