#include "sphcode/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sphcode/errors.hpp"

namespace sphcode {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

bool comment(const std::string& line) {
  const auto p = line.find_first_not_of(" \t");
  return p != std::string::npos && line[p] == '#';
}

// `key=value` tokens from a `#` header line.
std::optional<std::string> header_field(const std::string& line, const std::string& key) {
  for (const auto& tok : split(line.substr(line.find('#') + 1))) {
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  }
  return std::nullopt;
}

int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " '" + s + "'", line);
  }
}

// Significant digits in a decimal literal.
int significant_digits(const std::string& s) {
  int count = 0;
  bool leading = true;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

BigReal parse_value(const std::string& s, int digits, int line) {
  try {
    return BigReal::parse(s, digits);
  } catch (const Error&) {
    throw ParseError("bad number '" + s + "'", line);
  }
}

}  // namespace

// ---- points ----

PointFile parse_points(std::istream& in, int digits, bool renormalize) {
  PointFile f;
  std::vector<std::array<std::string, 3>> rows;
  std::vector<int> row_lines;
  std::optional<int> header_digits;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    if (comment(line)) {
      if (auto v = header_field(line, "precision")) header_digits = parse_int(*v, lineno, "precision");
      if (auto v = header_field(line, "potential")) {
        try {
          f.potential = Potential::parse(*v);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), lineno);
        }
      }
      continue;
    }
    auto toks = split(line);
    if (toks.size() != 3) throw ParseError("expected 3 coordinates, found " + std::to_string(toks.size()), lineno);
    rows.push_back({toks[0], toks[1], toks[2]});
    row_lines.push_back(lineno);
  }
  f.digits = digits > 0 ? digits : header_digits.value_or(BigReal::kDefaultDigits);
  if (f.digits < BigReal::kMinDigits) throw ParseError("precision below " + std::to_string(BigReal::kMinDigits), 0);
  std::vector<Point3> pts;
  pts.reserve(rows.size());
  const BigReal on_sphere = roundoff_tol(f.digits);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Point3 q(parse_value(rows[i][0], f.digits, row_lines[i]), parse_value(rows[i][1], f.digits, row_lines[i]),
             parse_value(rows[i][2], f.digits, row_lines[i]));
    if (abs(norm2(q) - 1L) >= on_sphere) {
      if (!renormalize) {
        throw OffSphere("point " + std::to_string(i + 1) + " (line " + std::to_string(row_lines[i]) +
                        ") has norm " + norm(q).to_string(12));
      }
      q = normalize(q);
    }
    pts.push_back(std::move(q));
  }
  f.points = PointSet(std::move(pts));
  return f;
}

PointFile read_points_file(const std::string& path, int digits, bool renormalize) {
  auto in = open_in(path);
  return parse_points(in, digits, renormalize);
}

PointSet read_points(const std::string& path, int digits, bool renormalize) {
  return read_points_file(path, digits, renormalize).points;
}

void format_points(std::ostream& out, const PointSet& p, int digits, const std::optional<Potential>& pot) {
  out << "# n=" << p.size() << " precision=" << digits;
  if (pot) out << " potential=" << pot->token();
  out << '\n';
  for (const auto& q : p) {
    out << with_precision(q.x, digits).to_exact_string() << ' ' << with_precision(q.y, digits).to_exact_string()
        << ' ' << with_precision(q.z, digits).to_exact_string() << '\n';
  }
}

void write_points(const std::string& path, const PointSet& p, int digits, const std::optional<Potential>& pot) {
  auto out = open_out(path);
  format_points(out, p, digits, pot);
}

// ---- params ----

ParamVector parse_params(std::istream& in, int digits) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<int> row_lines;
  std::optional<int> header_digits;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    if (comment(line)) {
      if (auto v = header_field(line, "precision")) header_digits = parse_int(*v, lineno, "precision");
      continue;
    }
    auto toks = split(line);
    if (toks.size() != 2) throw ParseError("expected 'name value'", lineno);
    for (const auto& r : rows) {
      if (r.first == toks[0]) throw ParseError("duplicate parameter '" + toks[0] + "'", lineno);
    }
    rows.emplace_back(toks[0], toks[1]);
    row_lines.push_back(lineno);
  }
  int d = digits > 0 ? digits : header_digits.value_or(0);
  if (d == 0) {
    d = BigReal::kDefaultDigits;
    for (const auto& r : rows) d = std::max(d, significant_digits(r.second));
  }
  ParamVector p;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p.names.push_back(rows[i].first);
    p.values.push_back(parse_value(rows[i].second, d, row_lines[i]));
  }
  return p;
}

ParamVector read_params(const std::string& path, int digits) {
  auto in = open_in(path);
  return parse_params(in, digits);
}

void format_params(std::ostream& out, const ParamVector& p) {
  out << "# precision=" << (p.values.empty() ? BigReal::kDefaultDigits : p.digits()) << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) out << p.names[i] << ' ' << p.values[i].to_exact_string() << '\n';
}

void write_params(const std::string& path, const ParamVector& p) {
  auto out = open_out(path);
  format_params(out, p);
}

// ---- specs ----

namespace {

int parse_sign(const std::string& s, int line) {
  if (s == "+") return 1;
  if (s == "-") return -1;
  throw ParseError("expected '+' or '-', found '" + s + "'", line);
}

// Reads `key=<ref>` tokens into `out` in the given key order.
std::vector<std::string> keyed(const std::vector<std::string>& toks, std::size_t from,
                               const std::vector<std::string>& keys, int line) {
  if (toks.size() - from != keys.size()) throw ParseError("expected fields for " + toks[0], line);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const std::string& t = toks[from + k];
    if (t.rfind(keys[k] + "=", 0) != 0) throw ParseError("expected '" + keys[k] + "=', found '" + t + "'", line);
    out.push_back(t.substr(keys[k].size() + 1));
  }
  return out;
}

ParamRef ref(const std::string& s, int line) {
  try {
    return ParamRef::parse(s);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

ConfigSpec parse_spec(std::istream& in) {
  std::vector<Generator> gens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || comment(line)) continue;
    auto toks = split(line);
    const std::string& kw = toks[0];
    if (kw == "pole") {
      if (toks.size() != 2) throw ParseError("expected 'pole +|-'", lineno);
      gens.emplace_back(Pole{parse_sign(toks[1], lineno)});
    } else if (kw == "ring" || kw == "oring") {
      if (toks.size() < 2) throw ParseError("missing polygon order", lineno);
      const int k = parse_int(toks[1], lineno, "polygon order");
      if (k < 2) throw ParseError("polygon order must be >= 2", lineno);
      if (kw == "ring") {
        auto f = keyed(toks, 2, {"z", "phase"}, lineno);
        gens.emplace_back(Ring{k, ref(f[0], lineno), ref(f[1], lineno)});
      } else {
        auto f = keyed(toks, 2, {"z", "x"}, lineno);
        gens.emplace_back(OffsetRing{k, ref(f[0], lineno), ref(f[1], lineno)});
      }
    } else if (kw == "free") {
      auto f = keyed(toks, 1, {"z", "x", "y"}, lineno);
      gens.emplace_back(FreePoint{ref(f[0], lineno), ref(f[1], lineno), parse_sign(f[2], lineno)});
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno);
    }
  }
  return ConfigSpec(std::move(gens));
}

ConfigSpec parse_spec_text(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

ConfigSpec read_spec(const std::string& path) {
  auto in = open_in(path);
  return parse_spec(in);
}

void format_spec(std::ostream& out, const ConfigSpec& spec) {
  for (const auto& g : spec.generators()) out << to_line(g) << '\n';
}

void write_spec(const std::string& path, const ConfigSpec& spec) {
  auto out = open_out(path);
  format_spec(out, spec);
}

// ---- polynomials ----

IntPolynomial parse_poly(std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || comment(line)) continue;
    std::vector<mpz_class> c;
    for (const auto& t : split(line)) {
      mpz_class v;
      if (v.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) throw ParseError("bad integer '" + t + "'", lineno);
      c.push_back(v);
    }
    try {
      return IntPolynomial::canonical(std::move(c));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  throw ParseError("no coefficients", lineno);
}

IntPolynomial read_poly(const std::string& path) {
  auto in = open_in(path);
  return parse_poly(in);
}

std::string format_poly(const IntPolynomial& poly) {
  std::string s;
  for (std::size_t k = 0; k < poly.coeffs.size(); ++k) {
    if (k) s += ' ';
    s += poly.coeffs[k].get_str();
  }
  return s;
}

void write_poly(const std::string& path, const IntPolynomial& poly) {
  auto out = open_out(path);
  out << format_poly(poly) << '\n';
}

// ---- manifests ----

std::string RunManifest::to_text() const {
  std::ostringstream os;
  os << "command " << command << '\n';
  os << "potential " << potential << '\n';
  os << "n " << n << '\n';
  os << "precision " << precision << '\n';
  os << "seed " << seed << '\n';
  for (const auto& a : algorithms) os << "algorithm " << a << '\n';
  os << "wall_time " << wall_time << '\n';
  if (!energy.empty()) os << "energy " << energy << '\n';
  if (!input.empty()) os << "input " << input << '\n';
  if (!output.empty()) os << "output " << output << '\n';
  for (const auto& a : argv) os << "arg " << a << '\n';
  return os.str();
}

RunManifest RunManifest::parse(std::istream& in) {
  RunManifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || comment(line)) continue;
    const auto sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string val = sp == std::string::npos ? "" : line.substr(sp + 1);
    try {
      if (key == "command") m.command = val;
      else if (key == "potential") m.potential = val;
      else if (key == "n") m.n = std::stoul(val);
      else if (key == "precision") m.precision = std::stoi(val);
      else if (key == "seed") m.seed = std::stoull(val);
      else if (key == "algorithm") m.algorithms.push_back(val);
      else if (key == "wall_time") m.wall_time = std::stod(val);
      else if (key == "energy") m.energy = val;
      else if (key == "input") m.input = val;
      else if (key == "output") m.output = val;
      else if (key == "arg") m.argv.push_back(val);
      else throw ParseError("unknown manifest key '" + key + "'", lineno);
    } catch (const std::logic_error&) {
      throw ParseError("bad value for '" + key + "'", lineno);
    }
  }
  return m;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  auto out = open_out(path);
  out << m.to_text();
}

RunManifest read_manifest(const std::string& path) {
  auto in = open_in(path);
  return RunManifest::parse(in);
}

}  // namespace sphcode
