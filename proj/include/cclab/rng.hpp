#pragma once

#include <cmath>
#include <cstdint>

namespace cclab {

// Mixes a 64-bit state one step forward and returns the scrambled output
// (splitmix64).  Used both as a standalone mixer and to expand a single
// seed word into a full xoshiro state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/**
 * Deterministic pseudo-random generator (xoshiro256**).
 *
 * The project never uses <random> distributions: their output is not
 * specified bit-for-bit across standard library implementations, and both
 * the simulator and the experiment pipeline promise byte-identical results
 * for a fixed seed on any platform.  Everything here is defined in terms of
 * integer arithmetic and the canonical 53-bit uniform double, so results
 * are reproducible everywhere.
 *
 * Independent substreams are derived with `substream(seed, index)`; the
 * session simulator gives session i its own substream so that results do
 * not depend on scheduling or on how many sessions run before i.
 */
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  // Generator for substream `index` of the stream family keyed by `seed`.
  // Distinct (seed, index) pairs yield decorrelated generators.
  static Xoshiro256ss substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t sm = seed;
    std::uint64_t base = splitmix64(sm);
    return Xoshiro256ss(base + 0x9E3779B97F4A7C15ULL * (index + 1));
  }

  std::uint64_t next() {
    std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Canonical uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // True with probability p.  p <= 0 is never true, p >= 1 is always true.
  bool bernoulli(double p) { return next_double() < p; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased integer in [0, n) via Lemire's multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t n) {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Gaussian draw via Box-Muller.  Always consumes exactly two uniforms and
  // discards the second variate; slightly wasteful but stateless, which keeps
  // draw sequences easy to reason about.
  double normal(double mean, double stddev) {
    double u1 = next_double();
    while (u1 == 0.0) u1 = next_double();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace cclab
