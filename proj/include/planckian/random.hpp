#pragma once

// Seeded, substreamed pseudorandom source. The bit generator is SplitMix64
// (Vigna's public-domain reference mixer, also the seeding generator of Java's
// SplittableRandom): pure 64-bit integer arithmetic, so identical
// (seed, substream) pairs reproduce bit-identical output on any platform.
//
// Substream k starts the state at seed + k * kSubstreamStride. Since the
// generator is the mixed counter state + i * gamma, a substream is the same
// cyclic sequence entered at offset k * stride * gamma^-1 mod 2^64 - an
// astronomically large pseudo-random shift, so practical-length substreams
// never overlap. Reference outputs are frozen in the test suite.

#include <cstdint>

namespace planckian {

struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t substream = 0;

  RandomStream child(std::uint64_t k) const { return {seed, substream + k}; }
};

class SplitMix64 {
 public:
  // Odd constant (fractional bits of sqrt 2) spacing the substream origins.
  static constexpr std::uint64_t kSubstreamStride = 0x6A09E667F3BCC909ull;

  explicit SplitMix64(RandomStream rs)
      : state_(rs.seed + rs.substream * kSubstreamStride) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool next_bool() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace planckian
