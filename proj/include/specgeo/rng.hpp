#pragma once

#include <cstdint>

namespace specgeo {

// SplitMix64 counter generator. All "random" sampling in the library flows
// through this so reports are bit-reproducible for a fixed 64-bit seed.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1); exactly (next_u64() >> 11) * 2^-53.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
  uint64_t state_;
};

}  // namespace specgeo
