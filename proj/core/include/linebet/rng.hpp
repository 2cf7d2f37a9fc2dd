#pragma once

#include <cstddef>
#include <cstdint>

namespace linebet {

/// SplitMix64: a counter-based 64-bit generator (Steele, Lea & Flood's
/// finalizer over a Weyl sequence). Output is a bijective hash of the
/// counter, so any seed gives a full-quality stream and identical seeds give
/// identical streams on every platform.
///
/// Replicated work derives independent streams as Rng(seed ^ index); all
/// randomized results in this library are functions of (seed, index) only,
/// never of thread scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Requires n > 0.
  std::size_t next_below(std::size_t n) {
    return static_cast<std::size_t>(next_unit() * static_cast<double>(n));
  }

 private:
  std::uint64_t state_;
};

}  // namespace linebet
