#pragma once

#include <cstdint>

namespace latred {

/// SplitMix64: a 64-bit counter passed through a fixed mixing function.
/// Fully specified, so streams are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, bound) by rejection, so no value is favoured. bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    // 2^64 mod bound; accepting x >= limit leaves a multiple of bound values.
    const std::uint64_t limit = -bound % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= limit) return x % bound;
    }
  }

  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
  }

 private:
  std::uint64_t state_;
};

/// Combines a base seed with stream identifiers into a fresh seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (a + 1)));
  mix.next();
  SplitMix64 second(mix.next() ^ (0x8CB92BA72F3D8DD7ULL * (b + 1)));
  return second.next();
}

}  // namespace latred
