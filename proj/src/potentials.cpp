#include "sphcode/potentials.hpp"

#include <charconv>

#include "sphcode/errors.hpp"
#include "sphcode/kernels.hpp"

namespace sphcode {

Potential Potential::riesz(int s) {
  if (s < 1) throw DomainError("Riesz exponent must be >= 1, got " + std::to_string(s));
  return {Kind::Riesz, s};
}

Potential Potential::parse(std::string_view token) {
  if (token == "log") return log();
  if (token == "r1") return coulomb();
  if (token == "r2") return inverse_square();
  if (token.starts_with("rs:")) {
    std::string_view rest = token.substr(3);
    int s = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), s);
    if (ec == std::errc() && ptr == rest.data() + rest.size() && s >= 1) return riesz(s);
  }
  throw ParseError("unknown potential '" + std::string(token) + "' (expected log, r1, r2 or rs:<k>)", 0);
}

std::string Potential::token() const {
  if (is_log()) return "log";
  if (s == 1) return "r1";
  if (s == 2) return "r2";
  return "rs:" + std::to_string(s);
}

BigReal pair_potential(const BigReal& d, const Potential& pot) {
  if (d.sign() <= 0) throw DomainError("pair distance must be positive, got " + d.to_string(12));
  if (pot.is_log()) return -log(d);
  return pow(d, -static_cast<long>(pot.s));
}

EnergyValue energy(const PointSet& p, const Potential& pot) {
  return {kernels::energy_parallel(p, pot), pot, p.size()};
}

Vec3 force(const PointSet& p, std::size_t i, const Potential& pot) {
  if (i >= p.size()) throw DomainError("point index " + std::to_string(i) + " out of range");
  const BigReal tol = half_precision_tol(p.digits());
  Vec3 acc = Vec3::zero(p.digits());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == i) continue;
    Vec3 r = p[i] - p[j];
    BigReal d2 = norm2(r);
    if (d2 <= tol * tol) {
      throw CoincidentPoints("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
    acc -= r * kernels::pair_coefficients(d2, pot, false).grad;
  }
  return acc;
}

std::vector<Vec3> forces(const PointSet& p, const Potential& pot) { return kernels::forces_parallel(p, pot); }

Vec3 tangential_component(const Point3& x, const Vec3& f) { return f - x * dot(f, x); }

BigReal residual(const PointSet& p, const Potential& pot) {
  BigReal worst = BigReal::zero(p.empty() ? BigReal::kDefaultDigits : p.digits());
  if (p.size() < 2) return worst;
  auto f = forces(p, pot);
  for (std::size_t i = 0; i < p.size(); ++i) {
    BigReal t = norm(tangential_component(p[i], f[i]));
    if (t > worst) worst = t;
  }
  return worst;
}

}  // namespace sphcode
