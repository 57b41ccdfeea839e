#include "sphcode/paramconfig.hpp"

#include <omp.h>

#include <array>
#include <cctype>
#include <exception>
#include <limits>

#include "sphcode/errors.hpp"
#include "sphcode/jet.hpp"

namespace sphcode {

// ---- constant expressions ----

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view s, int digits) : s_(s), digits_(digits) {}

  BigReal parse() {
    BigReal v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad constant '" + std::string(s_) + "': " + what, 0);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  BigReal expr() {
    BigReal v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  BigReal term() {
    BigReal v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        BigReal d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  BigReal unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  BigReal primary() {
    skip_ws();
    if (eat('(')) {
      BigReal v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      BigReal v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v.sign() < 0) fail("sqrt of a negative value");
      return sqrt(v);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (start == pos_) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
    return BigReal::parse(s_.substr(start, pos_ - start), digits_);
  }

  std::string_view s_;
  int digits_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool valid_name(std::string_view n) {
  if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
  for (char c : n) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

BigReal eval_constant(std::string_view expr, int digits) { return ExprParser(expr, digits).parse(); }

ParamRef ParamRef::constant(std::string expr) {
  ParamRef r;
  r.kind = Kind::Const;
  r.text = std::move(expr);
  return r;
}

ParamRef ParamRef::var(std::string name, bool negate) {
  ParamRef r;
  r.kind = Kind::Var;
  r.name = std::move(name);
  r.negate = negate;
  return r;
}

ParamRef ParamRef::parse(std::string_view text) {
  std::string t = trim(text);
  bool neg = false;
  std::string_view body = t;
  if (!body.empty() && body[0] == '-' && body.size() > 1 && body[1] == '$') {
    neg = true;
    body.remove_prefix(1);
  }
  if (!body.empty() && body[0] == '$') {
    body.remove_prefix(1);
    if (!valid_name(body)) throw ParseError("bad variable name '" + std::string(body) + "'", 0);
    return var(std::string(body), neg);
  }
  if (t.empty()) throw ParseError("empty parameter reference", 0);
  eval_constant(t, BigReal::kMinDigits);
  return constant(t);
}

std::string ParamRef::to_string() const {
  if (kind == Kind::Var) return (negate ? "-$" : "$") + name;
  return text;
}

// ---- specs ----

std::string to_line(const Generator& g) {
  std::string s;
  std::visit(
      [&](const auto& gen) {
        using G = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<G, Pole>) {
          s = gen.z_sign > 0 ? "pole +" : "pole -";
        } else if constexpr (std::is_same_v<G, Ring>) {
          s = "ring " + std::to_string(gen.k) + " z=" + gen.z.to_string() + " phase=" + gen.phase.to_string();
        } else if constexpr (std::is_same_v<G, OffsetRing>) {
          s = "oring " + std::to_string(gen.k) + " z=" + gen.z.to_string() + " x=" + gen.x.to_string();
        } else {
          s = "free z=" + gen.z.to_string() + " x=" + gen.x.to_string() + (gen.y_sign > 0 ? " y=+" : " y=-");
        }
      },
      g);
  return s;
}

namespace {

void resolve(ParamRef& r, std::vector<std::string>& names) {
  if (!r.is_var()) return;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == r.name) {
      r.index = static_cast<int>(i);
      return;
    }
  }
  r.index = static_cast<int>(names.size());
  names.push_back(r.name);
}

}  // namespace

ConfigSpec::ConfigSpec(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (auto& g : generators_) {
    std::visit(
        [&](auto& gen) {
          using G = std::decay_t<decltype(gen)>;
          if constexpr (std::is_same_v<G, Pole>) {
            if (gen.z_sign != 1 && gen.z_sign != -1) throw DomainError("pole sign must be +1 or -1");
          } else if constexpr (std::is_same_v<G, Ring>) {
            if (gen.k < 2) throw DomainError("ring size must be >= 2");
            resolve(gen.z, names_);
            resolve(gen.phase, names_);
          } else if constexpr (std::is_same_v<G, OffsetRing>) {
            if (gen.k < 2) throw DomainError("ring size must be >= 2");
            resolve(gen.z, names_);
            resolve(gen.x, names_);
          } else {
            if (gen.y_sign != 1 && gen.y_sign != -1) throw DomainError("free point y sign must be +1 or -1");
            resolve(gen.z, names_);
            resolve(gen.x, names_);
          }
        },
        g);
  }
}

std::size_t ConfigSpec::point_count() const {
  std::size_t n = 0;
  for (const auto& g : generators_) {
    if (const auto* r = std::get_if<Ring>(&g)) {
      n += static_cast<std::size_t>(r->k);
    } else if (const auto* o = std::get_if<OffsetRing>(&g)) {
      n += static_cast<std::size_t>(o->k);
    } else {
      n += 1;
    }
  }
  return n;
}

int ParamVector::digits() const {
  int d = BigReal::kDefaultDigits;
  for (std::size_t i = 0; i < values.size(); ++i) d = i == 0 ? values[i].digits() : std::min(d, values[i].digits());
  return d;
}

ParamVector with_precision(const ParamVector& p, int digits) {
  ParamVector out{p.names, {}};
  out.values.reserve(p.values.size());
  for (const auto& v : p.values) out.values.push_back(with_precision(v, digits));
  return out;
}

namespace {

std::string describe(const Generator& g, std::size_t idx) {
  return "generator " + std::to_string(idx + 1) + " (" + to_line(g) + ")";
}

// Scalar policies so one builder serves plain values and jets.
struct PlainOps {
  using T = BigReal;
  const ParamVector& params;
  int digits;

  T ref(const ParamRef& r) const {
    if (!r.is_var()) return eval_constant(r.text, digits);
    T v = with_precision(params.values[static_cast<std::size_t>(r.index)], digits);
    return r.negate ? -v : v;
  }
  T lit(const BigReal& v) const { return v; }
  T root(const T& rad, const std::string& where) const {
    if (abs(rad) < roundoff_tol(digits)) return BigReal::zero(digits);
    if (rad.sign() < 0) throw DomainViolation(where + ": negative radicand " + rad.to_string(12));
    return sqrt(rad);
  }
  static const BigReal& value(const T& t) { return t; }
};

struct JetOps {
  using T = Jet;
  const ParamVector& params;
  int digits;

  T ref(const ParamRef& r) const {
    if (!r.is_var()) return Jet::constant(eval_constant(r.text, digits));
    T v = Jet::variable(r.index, with_precision(params.values[static_cast<std::size_t>(r.index)], digits));
    return r.negate ? -v : v;
  }
  T lit(const BigReal& v) const { return Jet::constant(v); }
  T root(const T& rad, const std::string& where) const {
    if (rad.width() == 0) {
      if (abs(rad.value()) < roundoff_tol(digits)) return Jet::constant(BigReal::zero(digits));
      if (rad.value().sign() < 0) throw DomainViolation(where + ": negative radicand " + rad.value().to_string(12));
      return Jet::constant(sqrt(rad.value()));
    }
    if (!(rad.value().sign() > 0)) {
      throw DomainViolation(where + ": radicand " + rad.value().to_string(12) + " is not strictly positive");
    }
    return sqrt(rad);
  }
  static const BigReal& value(const T& t) { return t.value(); }
};

template <class Ops>
std::vector<std::array<typename Ops::T, 3>> build(const ConfigSpec& spec, const Ops& ops) {
  using T = typename Ops::T;
  const int d = ops.digits;
  const BigReal two_pi = 2L * BigReal::pi(d);
  std::vector<std::array<T, 3>> pts;
  pts.reserve(spec.point_count());
  const T one = ops.lit(BigReal::one(d));
  const T zero = ops.lit(BigReal::zero(d));
  for (std::size_t gi = 0; gi < spec.generators().size(); ++gi) {
    const Generator& g = spec.generators()[gi];
    if (const auto* p = std::get_if<Pole>(&g)) {
      pts.push_back({zero, zero, ops.lit(BigReal(p->z_sign, d))});
    } else if (const auto* r = std::get_if<Ring>(&g)) {
      T z = ops.ref(r->z);
      T rho = ops.root(one - z * z, describe(g, gi));
      T phase = ops.ref(r->phase);
      for (int m = 0; m < r->k; ++m) {
        T ang = (phase + ops.lit(BigReal(m, d) / static_cast<long>(r->k))) * two_pi;
        pts.push_back({rho * cos(ang), rho * sin(ang), z});
      }
    } else if (const auto* o = std::get_if<OffsetRing>(&g)) {
      T z = ops.ref(o->z);
      T x0 = ops.ref(o->x);
      T y0 = ops.root(one - z * z - x0 * x0, describe(g, gi));
      for (int m = 0; m < o->k; ++m) {
        BigReal ang = two_pi * BigReal(m, d) / static_cast<long>(o->k);
        BigReal c = cos(ang), s = sin(ang);
        pts.push_back({x0 * c - y0 * s, x0 * s + y0 * c, z});
      }
    } else {
      const auto& f = std::get<FreePoint>(g);
      T z = ops.ref(f.z);
      T x = ops.ref(f.x);
      T y = ops.root(one - z * z - x * x, describe(g, gi));
      pts.push_back({x, f.y_sign > 0 ? y : -y, z});
    }
  }
  return pts;
}

void check_arity(const ConfigSpec& spec, const ParamVector& params) {
  if (params.values.size() != spec.arity()) {
    throw SizeMismatch("spec has " + std::to_string(spec.arity()) + " parameters, vector has " +
                       std::to_string(params.values.size()));
  }
}

int working_digits(const ParamVector& params) { return params.values.empty() ? BigReal::kDefaultDigits : params.digits(); }

}  // namespace

PointSet build_points(const ConfigSpec& spec, const ParamVector& params) {
  check_arity(spec, params);
  PlainOps ops{params, working_digits(params)};
  auto raw = build(spec, ops);
  std::vector<Point3> pts;
  pts.reserve(raw.size());
  for (auto& c : raw) pts.push_back({std::move(c[0]), std::move(c[1]), std::move(c[2])});
  return PointSet(std::move(pts));
}

BigReal param_energy(const ConfigSpec& spec, const ParamVector& params, const Potential& pot) {
  return energy(build_points(spec, params), pot).value;
}

ParamDerivatives param_derivatives(const ConfigSpec& spec, const ParamVector& params, const Potential& pot) {
  check_arity(spec, params);
  const int d = working_digits(params);
  JetOps ops{params, d};
  const auto pts = build(spec, ops);
  const std::size_t n = pts.size();
  const std::size_t a = spec.arity();
  const BigReal tol2 = square(half_precision_tol(d));

  struct Row {
    BigReal v;
    std::vector<BigReal> g, h;
  };
  std::vector<Row> rows(n);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) if (n >= 16)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      Row row{BigReal::zero(d), std::vector<BigReal>(a, BigReal::zero(d)), std::vector<BigReal>(a * a, BigReal::zero(d))};
      for (std::size_t j = i + 1; j < n; ++j) {
        Jet dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1], dz = pts[i][2] - pts[j][2];
        Jet d2 = dx * dx + dy * dy + dz * dz;
        if (d2.value() <= tol2) {
          throw CoincidentPoints("points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
        }
        Jet phi = pot.is_log() ? log(d2) * BigReal(-0.5, d) : pow(d2, -pot.s, 2);
        phi.add_to(row.v, row.g, row.h, a);
      }
      rows[i] = std::move(row);
    } catch (...) {
#pragma omp critical(sphcode_param_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  ParamDerivatives out{BigReal::zero(d), std::vector<BigReal>(a, BigReal::zero(d)), Matrix(a, d)};
  for (auto& row : rows) {
    out.energy += row.v;
    for (std::size_t k = 0; k < a; ++k) out.gradient[k] += row.g[k];
    for (std::size_t k = 0; k < a; ++k) {
      for (std::size_t l = 0; l < a; ++l) out.jacobian(k, l) += row.h[k * a + l];
    }
  }
  return out;
}

std::vector<BigReal> param_gradient(const ConfigSpec& spec, const ParamVector& params, const Potential& pot) {
  return param_derivatives(spec, params, pot).gradient;
}

Matrix param_jacobian(const ConfigSpec& spec, const ParamVector& params, const Potential& pot) {
  return param_derivatives(spec, params, pot).jacobian;
}

namespace {

BigReal vec_norm(const std::vector<BigReal>& v, int digits) {
  BigReal s = BigReal::zero(digits);
  for (const auto& x : v) s += x * x;
  return sqrt(s);
}

}  // namespace

NewtonReport newton_refine_report(const ConfigSpec& spec, const ParamVector& params0, const Potential& pot,
                                  int target_digits) {
  check_arity(spec, params0);
  if (target_digits < BigReal::kMinDigits) throw DomainError("target precision must be >= 16 digits");
  const int cap = target_digits + 10;
  const BigReal goal = BigReal::pow10(5 - target_digits, cap);
  int w = std::min(cap, std::max(40, params0.values.empty() ? 0 : params0.digits()));
  ParamVector x = with_precision(params0, w);
  NewtonReport rep;
  BigReal prev;
  bool have_prev = false;
  int grows = 0;
  for (int it = 0; it < 200; ++it) {
    x = with_precision(x, w);
    ParamDerivatives dv = param_derivatives(spec, x, pot);
    BigReal gn = vec_norm(dv.gradient, w);
    if (w == cap && gn < goal) {
      rep.params = std::move(x);
      rep.grad_norm = gn;
      return rep;
    }
    if (spec.arity() == 0) {
      throw Diverged("no free parameters, gradient norm " + gn.to_string(6));
    }
    if (have_prev && gn > prev) {
      if (++grows >= 2) throw Diverged("gradient norm grew on two consecutive steps (now " + gn.to_string(6) + ")");
    } else {
      grows = 0;
    }
    prev = gn;
    have_prev = true;
    std::vector<BigReal> rhs;
    rhs.reserve(dv.gradient.size());
    for (const auto& g : dv.gradient) rhs.push_back(-g);
    std::vector<BigReal> h = solve_linear(std::move(dv.jacobian), std::move(rhs), half_precision_tol(w));
    BigReal hn = vec_norm(h, w);
    rep.steps.push_back({w, gn, hn});
    for (std::size_t k = 0; k < h.size(); ++k) x.values[k] += h[k];
    // digits now correct: about twice those of the step just taken
    const double correct = hn.is_zero() ? static_cast<double>(cap) : -hn.log10_abs();
    const int want = static_cast<int>(std::min<double>(cap, std::max<double>(w, 2.0 * correct + 10.0)));
    w = std::max(w, want);
  }
  throw Diverged("Newton iteration did not reach the target gradient norm");
}

ParamVector newton_refine(const ConfigSpec& spec, const ParamVector& params0, const Potential& pot,
                          int target_digits) {
  return newton_refine_report(spec, params0, pot, target_digits).params;
}

}  // namespace sphcode
