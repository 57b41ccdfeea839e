#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sphcode/algebra.hpp"
#include "sphcode/geometry.hpp"
#include "sphcode/paramconfig.hpp"
#include "sphcode/potentials.hpp"

namespace sphcode {

struct PointFile {
  PointSet points;
  int digits = BigReal::kDefaultDigits;
  std::optional<Potential> potential;
};

/// Point files: `#` comment lines, then one `x y z` triple per line. The
/// header `# n=<count> precision=<digits> potential=<tok>` is optional on read.
/// `digits` overrides the header precision when positive. Points off the
/// sphere by more than 10^(2-digits) raise OffSphere unless `renormalize`.
PointFile parse_points(std::istream& in, int digits = 0, bool renormalize = false);
PointFile read_points_file(const std::string& path, int digits = 0, bool renormalize = false);
PointSet read_points(const std::string& path, int digits = 0, bool renormalize = false);
/// Values carry enough digits to read back bit-identically at `digits`.
void format_points(std::ostream& out, const PointSet& p, int digits, const std::optional<Potential>& pot = {});
void write_points(const std::string& path, const PointSet& p, int digits, const std::optional<Potential>& pot = {});

/// `name value` lines with an optional `# precision=<digits>` header. Without
/// a header or override, the precision covers the longest value (at least 40).
ParamVector parse_params(std::istream& in, int digits = 0);
ParamVector read_params(const std::string& path, int digits = 0);
void format_params(std::ostream& out, const ParamVector& p);
void write_params(const std::string& path, const ParamVector& p);

/// One generator per line: `pole +|-`, `ring k z=<ref> phase=<ref>`,
/// `oring k z=<ref> x=<ref>`, `free z=<ref> x=<ref> y=+|-`.
ConfigSpec parse_spec(std::istream& in);
ConfigSpec parse_spec_text(const std::string& text);
ConfigSpec read_spec(const std::string& path);
void format_spec(std::ostream& out, const ConfigSpec& spec);
void write_spec(const std::string& path, const ConfigSpec& spec);

/// One line of integers, ascending degree. Canonicalized on read.
IntPolynomial parse_poly(std::istream& in);
IntPolynomial read_poly(const std::string& path);
void write_poly(const std::string& path, const IntPolynomial& poly);
std::string format_poly(const IntPolynomial& poly);

struct RunManifest {
  std::string command;
  std::string potential;
  std::size_t n = 0;
  int precision = BigReal::kDefaultDigits;
  std::uint64_t seed = 0;
  std::vector<std::string> algorithms;
  double wall_time = 0;
  std::string energy;
  std::string input;
  std::string output;
  /// Full argument vector, for replay.
  std::vector<std::string> argv;

  std::string to_text() const;
  static RunManifest parse(std::istream& in);
};

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest read_manifest(const std::string& path);

}  // namespace sphcode
