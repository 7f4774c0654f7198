#pragma once

#include <cstdint>
#include <random>

namespace knowsearch {

// Portable draws on top of std::mt19937_64, whose output sequence is fixed
// by the standard (the std distributions are not, so they are avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

inline constexpr const char* kSamplingAlgorithm = "mt19937_64/rejection/partial-fisher-yates/v1";

}  // namespace knowsearch
