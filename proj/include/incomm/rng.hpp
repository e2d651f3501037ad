#pragma once

#include <cstdint>
#include <random>

namespace incomm {

/// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for one Monte Carlo replicate:
///   mix(base_seed XOR ((tuple_index << 32) | replicate_index))
/// Both indices must fit in 32 bits.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint32_t tuple_index,
                                       std::uint32_t replicate_index) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(tuple_index) << 32) | static_cast<std::uint64_t>(replicate_index);
  return splitmix64_mix(base_seed ^ key);
}

/// 64-bit Mersenne Twister with portable uniform and normal transforms, so
/// a given seed yields the same stream with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace incomm
