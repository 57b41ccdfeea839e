#pragma once

#include <string>
#include <vector>

#include "sphcode/geometry.hpp"
#include "sphcode/paramconfig.hpp"
#include "sphcode/registry.hpp"

namespace known {

using sphcode::BigReal;
using sphcode::Point3;
using sphcode::PointSet;

inline Point3 pt(const char* x, const char* y, const char* z, int d) {
  return {sphcode::eval_constant(x, d), sphcode::eval_constant(y, d), sphcode::eval_constant(z, d)};
}

inline PointSet from(const std::vector<std::vector<const char*>>& rows, int d) {
  std::vector<Point3> v;
  for (const auto& r : rows) v.push_back(pt(r[0], r[1], r[2], d));
  return PointSet(std::move(v));
}

inline PointSet antipodal(int d = 40) { return from({{"0", "0", "1"}, {"0", "0", "-1"}}, d); }

inline PointSet triangle(int d = 40) {
  return from({{"1", "0", "0"}, {"-1/2", "sqrt(3)/2", "0"}, {"-1/2", "-sqrt(3)/2", "0"}}, d);
}

inline PointSet tetrahedron(int d = 40) {
  return from({{"sqrt(1/3)", "sqrt(1/3)", "sqrt(1/3)"},
               {"sqrt(1/3)", "-sqrt(1/3)", "-sqrt(1/3)"},
               {"-sqrt(1/3)", "sqrt(1/3)", "-sqrt(1/3)"},
               {"-sqrt(1/3)", "-sqrt(1/3)", "sqrt(1/3)"}},
              d);
}

inline PointSet square(int d = 40) {
  return from({{"1", "0", "0"}, {"0", "1", "0"}, {"-1", "0", "0"}, {"0", "-1", "0"}}, d);
}

inline PointSet bipyramid(int d = 40) {
  return from({{"0", "0", "1"}, {"1", "0", "0"}, {"-1/2", "sqrt(3)/2", "0"}, {"-1/2", "-sqrt(3)/2", "0"}, {"0", "0", "-1"}},
              d);
}

inline PointSet octahedron(int d = 40) {
  return from({{"1", "0", "0"}, {"-1", "0", "0"}, {"0", "1", "0"}, {"0", "-1", "0"}, {"0", "0", "1"}, {"0", "0", "-1"}},
              d);
}

inline PointSet cube(int d = 40) {
  std::vector<std::vector<const char*>> rows;
  const char* s[2] = {"sqrt(1/3)", "-sqrt(1/3)"};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) rows.push_back({s[a], s[b], s[c]});
  return from(rows, d);
}

inline PointSet icosahedron(int d = 40) {
  auto e = sphcode::builtin_spec(12, sphcode::Potential::coulomb(), d);
  return sphcode::build_points(e.spec, e.seed);
}

inline PointSet code32(int d = 40) {
  auto e = sphcode::builtin_spec(32, sphcode::Potential::inverse_square(), d);
  return sphcode::build_points(e.spec, e.seed);
}

/// Regular k-gon on the equator.
inline PointSet ring(int k, int d = 40) {
  std::vector<Point3> v;
  const BigReal two_pi = BigReal::pi(d) * 2L;
  for (int m = 0; m < k; ++m) {
    BigReal t = two_pi * static_cast<long>(m) / static_cast<long>(k);
    v.push_back({cos(t), sin(t), BigReal::zero(d)});
  }
  return PointSet(std::move(v));
}

}  // namespace known
