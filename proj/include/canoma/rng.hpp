// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.

#ifndef CANOMA_RNG_HPP
#define CANOMA_RNG_HPP

#include <cmath>
#include <cstdint>

namespace canoma {

/// SplitMix64 output function: a bijective 64-bit mix.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream. The n-th output is a pure function of
/// (key, n), so streams can be evaluated in any order and in parallel.
/// Experiment code derives one stream per trial from (seed, 0, realization);
/// the second component is kept at zero so that all points of a parameter
/// sweep share the same channel draws (common random numbers).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_hi, std::uint64_t stream_lo)
      : key_(derive_key(seed, stream_hi, stream_lo)) {}

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;  // golden-ratio increment
    return splitmix64_mix(counter_ ^ key_);
  }

  /// Uniform draw on (0, 1].
  double next_u01() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;  // [0, 1)
    return 1.0 - u;
  }

  /// Unit-mean exponential draw (Rayleigh-fading power gain).
  double next_exp1() { return -std::log(next_u01()); }

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t hi, std::uint64_t lo) {
    std::uint64_t k = splitmix64_mix(seed + 0x9E3779B97F4A7C15ULL);
    k = splitmix64_mix(k ^ (hi + 0xD1B54A32D192ED03ULL));
    k = splitmix64_mix(k ^ (lo + 0x8CB92BA72F3D8DD7ULL));
    return k;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace canoma

#endif  // CANOMA_RNG_HPP
