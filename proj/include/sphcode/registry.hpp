#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sphcode/paramconfig.hpp"
#include "sphcode/potentials.hpp"

namespace sphcode {

struct RegistryEntry {
  ConfigSpec spec;
  /// Seed values (19 significant digits) for the requested potential; empty
  /// for structures without free parameters.
  ParamVector seed;
  std::string description;
};

/// Built-in parameterization of the minimal configuration for n points.
/// Throws Unregistered when (n, pot) has no entry.
RegistryEntry builtin_spec(std::size_t n, const Potential& pot, int digits = BigReal::kDefaultDigits);

std::vector<std::size_t> registered_sizes();

}  // namespace sphcode
