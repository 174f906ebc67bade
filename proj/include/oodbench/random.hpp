#pragma once

#include <cstdint>
#include <optional>

namespace oodbench {

// SplitMix64, used only to expand a user seed into PCG32 state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

// Portable seeded generator: PCG32 (XSH-RR 64/32) seeded through SplitMix64.
//
// Every draw below is specified bit-for-bit so outputs do not depend on the
// standard library implementation:
//  - uniform():  53-bit mantissa from two 32-bit draws (high word first), in [0, 1)
//  - normal():   Box-Muller. Each pair consumes two uniforms u1, u2; the cosine
//                branch is returned first and the sine branch is cached for the
//                next call. Reseeding is the only way to drop the cache.
//  - poisson():  Knuth multiplication method, one uniform per factor.
//  - below(n):   modulo with rejection of the biased low range.
//
// A Prng is single-owner; never share one between threads.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) noexcept;

  std::uint32_t next_u32() noexcept;
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;
  double normal() noexcept;
  double normal(double mean, double stddev) noexcept;
  std::uint32_t below(std::uint32_t bound) noexcept;
  std::uint64_t poisson(double mean) noexcept;

 private:
  std::uint64_t state_ = 0;
  std::uint64_t increment_ = 0;
  std::optional<double> cached_normal_;
};

}  // namespace oodbench
