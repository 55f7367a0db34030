#pragma once

#include <cstdint>
#include <initializer_list>

namespace hgcolor::rng {

// Counter-based deterministic random draws.  Every draw is a pure function
// of (seed, key...), so results do not depend on evaluation order and any
// single draw can be replayed in isolation.  The mixer is the SplitMix64
// finalizer, which passes standard statistical batteries when driven by a
// counter.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t combine(std::uint64_t acc, std::uint64_t v) {
  return mix64(acc + kGolden + v);
}

inline std::uint64_t draw_u64(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> key) {
  std::uint64_t acc = mix64(seed + kGolden);
  for (std::uint64_t v : key) acc = combine(acc, v);
  return acc;
}

// Uniform double in [0, 1), 53 mantissa bits.
constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

inline double draw_unit(std::uint64_t seed,
                        std::initializer_list<std::uint64_t> key) {
  return to_unit(draw_u64(seed, key));
}

// Sequential draws under a fixed key prefix.  Draw n is mix64(base + n*golden),
// so the stream is itself counter-based and replayable.
class Stream {
 public:
  Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
    base_ = mix64(seed + kGolden);
    for (std::uint64_t v : key) base_ = combine(base_, v);
  }

  std::uint64_t next_u64() { return mix64(base_ + (++ctr_) * kGolden); }

  double next_unit() { return to_unit(next_u64()); }

  // Unbiased uniform integer in [0, n); rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    // limit is the largest multiple of n that fits in 64 bits
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

 private:
  std::uint64_t base_ = 0;
  std::uint64_t ctr_ = 0;
};

}  // namespace hgcolor::rng
