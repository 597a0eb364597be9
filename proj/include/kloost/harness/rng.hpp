#pragma once

#include <bit>
#include <cstdint>

#include "kloost/arith.hpp"

namespace kloost::harness {

// SplitMix64 finalizer.
inline constexpr u64 mix64(u64 z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

/// Counter-based stream keyed by (seed, p, theta, sample). Every sweep cell
/// and sample owns an independent stream, so results do not depend on the
/// order in which cells are evaluated.
class StreamRng {
 public:
  StreamRng(u64 seed, u64 p, double theta, u64 sample_index) noexcept
      : key_(mix64(mix64(mix64(seed) ^ p) ^ std::bit_cast<u64>(theta)) ^ mix64(~sample_index)) {}

  explicit StreamRng(u64 seed) noexcept : key_(mix64(seed)) {}

  u64 next() noexcept { return mix64(key_ ^ mix64(counter_++)); }

  /// Uniform in [0, n), n >= 1 (Lemire's multiply-shift with rejection).
  u64 uniform(u64 n) noexcept {
    u128 m = static_cast<u128>(next()) * n;
    u64 low = static_cast<u64>(m);
    if (low < n) {
      const u64 threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<u128>(next()) * n;
        low = static_cast<u64>(m);
      }
    }
    return static_cast<u64>(m >> 64U);
  }

  /// Uniform in [lo, hi].
  u64 uniform(u64 lo, u64 hi) noexcept { return lo + uniform(hi - lo + 1); }

 private:
  u64 key_;
  u64 counter_ = 0;
};

}  // namespace kloost::harness
