#pragma once

#include <cstdint>

namespace percolab {

// splitmix64 finalizer; also the per-step output function of the sequential
// generator below.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double u01(std::uint64_t h) {
  return double(h >> 11) * 0x1.0p-53;
}

// Counter-based label: pure function of (seed, sample, element), so labels can
// be generated lazily, in any order, and by any number of workers.
inline std::uint64_t element_hash(std::uint64_t seed, std::uint64_t sample,
                                  std::uint64_t element) {
  std::uint64_t h = mix64(seed ^ (0x9e3779b97f4a7c15ULL * (sample + 1)));
  return mix64(h ^ (0xbf58476d1ce4e5b9ULL * (element + 1)));
}

inline double element_label(std::uint64_t seed, std::uint64_t sample,
                            std::uint64_t element) {
  return u01(element_hash(seed, sample, element));
}

// Sequential stream for event-driven simulations. One instance per run.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // in [0, 1)
  double next_double() { return u01(next()); }

  // uniform in {0, ..., n-1}; n must be positive
  std::uint64_t next_below(std::uint64_t n) {
    // rejection-free modulo is fine here: n is tiny compared to 2^64
    return next() % n;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed for (master seed, run index).
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t run) {
  return element_hash(master, run, 0x5eedULL);
}

}  // namespace percolab
