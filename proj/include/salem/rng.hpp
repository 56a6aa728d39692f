#ifndef SALEM_RNG_HPP
#define SALEM_RNG_HPP

#include <cstdint>

namespace salem {

// SplitMix64 with keyed substreams. Each (seed, level, attempt) triple opens
// an independent stream, so construction order never depends on threading or
// on how many attempts earlier levels consumed.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t state) : state_(state) {}

  static SplitMix64 stream(uint64_t seed, uint64_t level, uint64_t attempt) {
    uint64_t s = seed;
    s = mix(s + 0x9E3779B97F4A7C15ull * (level + 1));
    s = mix(s + 0xBF58476D1CE4E5B9ull * (attempt + 1));
    return SplitMix64(s);
  }

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection.
  uint64_t bounded(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace salem

#endif
