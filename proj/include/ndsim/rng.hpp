#pragma once

#include <cstdint>

#include "ndsim/time.hpp"

namespace ndsim {

// splitmix64. Small, fast, and bit-stable across platforms and standard
// libraries, which std::uniform_*_distribution is not. Every trial gets its
// own stream derived from (master seed, scenario id, trial index), so results
// never depend on execution order or thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Continuous uniform on [0, max_us], rounded to integer microseconds.
  micros_t uniform_rounded_us(micros_t max_us) {
    return static_cast<micros_t>(next_double() * static_cast<double>(max_us) + 0.5);
  }

  // Integer uniform on [0, n).
  micros_t below(micros_t n) {
    return static_cast<micros_t>(next_double() * static_cast<double>(n));
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t scenario,
                                 std::uint64_t trial) {
  std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (scenario + 0xbf58476d1ce4e5b9ULL));
  h = mix64(h ^ (trial + 0x94d049bb133111ebULL));
  return h;
}

}  // namespace ndsim
