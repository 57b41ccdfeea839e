#include "sphcode/rng.hpp"

namespace sphcode {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(mix(seed) ^ mix(mix(stream + kGolden) + 0x632BE59BD9B4E019ULL)) {}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix(key_ + counter_ * kGolden);
}

double Rng::next_uniform_double() {
  // 53 random bits -> integer in [0, 2^53], mapped onto [-1, 1].
  const std::uint64_t bits = next_u64() >> 11;
  const double u = static_cast<double>(bits) / 4503599627370496.0;  // [0, 2)
  return u - 1.0;
}

BigReal Rng::next_uniform(int digits) { return BigReal(next_uniform_double(), digits); }

}  // namespace sphcode
