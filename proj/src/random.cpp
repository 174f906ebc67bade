#include "oodbench/random.hpp"

#include <cmath>
#include <numbers>

namespace oodbench {

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Prng::Prng(std::uint64_t seed) noexcept {
  SplitMix64 expander(seed);
  const std::uint64_t init_state = expander.next();
  const std::uint64_t sequence = expander.next();
  // pcg32_srandom_r
  increment_ = (sequence << 1u) | 1u;
  state_ = 0;
  next_u32();
  state_ += init_state;
  next_u32();
}

std::uint32_t Prng::next_u32() noexcept {
  const std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + increment_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

double Prng::uniform() noexcept {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  const std::uint64_t bits = ((hi << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

double Prng::uniform(double lo, double hi) noexcept {
  return lo + (hi - lo) * uniform();
}

double Prng::normal() noexcept {
  if (cached_normal_) {
    const double v = *cached_normal_;
    cached_normal_.reset();
    return v;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  return r * std::cos(theta);
}

double Prng::normal(double mean, double stddev) noexcept {
  return mean + stddev * normal();
}

std::uint32_t Prng::below(std::uint32_t bound) noexcept {
  if (bound <= 1) return 0;
  // Reject the low sliver that would bias the modulo.
  const std::uint32_t threshold = (0u - bound) % bound;
  for (;;) {
    const std::uint32_t r = next_u32();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t Prng::poisson(double mean) noexcept {
  if (!(mean > 0.0)) return 0;
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double product = uniform();
  while (product > limit) {
    ++k;
    product *= uniform();
  }
  return k;
}

}  // namespace oodbench
