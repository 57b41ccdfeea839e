#pragma once

#include <cstdint>
#include <string_view>

#include "sphcode/big_real.hpp"

namespace sphcode {

/// Counter-based generator: output k of stream (seed, stream) is a SplitMix64
/// finalizer applied to key + k * golden, so sequences depend only on the
/// 64-bit inputs and are identical on every platform.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64-ctr";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  /// Uniform double in [-1, 1] on a 2^-52 grid.
  double next_uniform_double();
  /// Uniform in [-1, 1] at double granularity, widened to `digits`.
  BigReal next_uniform(int digits);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sphcode
