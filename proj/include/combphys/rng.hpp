#pragma once

#include <cstdint>

namespace combphys {

// SplitMix64 (Steele, Lea & Flood), with the standard increment and
// finalizer constants. The algorithm and the stream derivation below are
// part of the reproducibility contract: changing either changes every
// seeded result.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform integer in [lo, hi] by rejection (no modulo bias).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  // Stream for trial `index` of a run seeded with `seed`. Depends only on
  // (seed, index), so trials can be scheduled on any worker.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(mix(seed) ^ mix(index + kGamma)));
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t state_;
};

inline std::uint64_t SplitMix64::uniform(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return next();  // full 64-bit range
  // Largest multiple of span that fits; draws at or above it are rejected.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span + 1) % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x > limit);
  return lo + x % span;
}

}  // namespace combphys
