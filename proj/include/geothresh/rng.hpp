#ifndef GEOTHRESH_RNG_HPP
#define GEOTHRESH_RNG_HPP

// Portable random streams. Every variate here is produced by code in this
// file (no <random> distributions), so a stream is reproducible bit-for-bit
// across compilers and in ports to other languages.
//
//   SplitMix64   seeding / stream derivation (Steele, Lea, Flood 2014)
//   Xoshiro256ss main generator, xoshiro256** 1.0 (Blackman, Vigna 2018)
//
// Stream for replication `rep` under master seed `seed`:
//   SplitMix64 sm(seed ^ mix64(rep + 1)); state[i] = sm.next() for i = 0..3
// where mix64 is the SplitMix64 output finaliser.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace geothresh {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256ss(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& s : s_) s = sm.next();
  }
  constexpr Xoshiro256ss(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                         std::uint64_t d) noexcept
      : s_{a, b, c, d} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

using Rng = Xoshiro256ss;

/// Independent stream for replication `rep`; see header comment.
inline Rng replication_stream(std::uint64_t seed, std::uint64_t rep) noexcept {
  return Rng(seed ^ mix64(rep + 1));
}

/// Poisson(mean) variate.
///
/// mean < 30: sequential inversion from 0.
/// mean >= 30: PTRS transformed rejection (Hoermann 1993) with its published
/// constants b = 0.931 + 2.53 sqrt(mu), a = -0.059 + 0.02483 b,
/// 1/alpha = 1.1239 + 1.1328/(b - 3.4), v_r = 0.9277 - 3.6224/(b - 2).
inline std::uint64_t poisson(Rng& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean < 30.0) {
    std::uint64_t k = 0;
    double p = std::exp(-mean);
    double cdf = p;
    const double u = rng.uniform();
    while (u > cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
      if (p == 0.0) break;  // u landed in the rounding gap at the far tail
    }
    return k;
  }
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace geothresh

#endif  // GEOTHRESH_RNG_HPP
