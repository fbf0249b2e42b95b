#pragma once
#include <cstdint>

namespace rmq {

// SplitMix64. Small, fast, full 2^64 period, and trivially seedable, which is
// what matters here: every artifact (instance files, Monte Carlo sweeps) must
// be reproducible from a single 64-bit seed. Seed 0 is reserved for the frozen
// test vectors; user-facing defaults start at 42.
struct SplitMix64 {
  std::uint64_t state = 0;

  constexpr SplitMix64() = default;
  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound = 0 is a caller bug.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  bool bit() { return next() >> 63; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Independent stream for sub-task `index` (guess number, repetition, ...).
// Derived streams are scheduling-independent, so threaded sweeps stay
// bit-reproducible.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ ((index + 1) * 0x9e3779b97f4a7c15ULL));
  g.next();
  return g.next();
}

}  // namespace rmq
