#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "mlas/errors.hpp"

namespace mlas {

// Seeded random source. All sampling goes through explicit helpers instead of
// <random> distributions, so a given seed reproduces the same stream on every
// standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n), unbiased by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw DomainError("next_below: empty range");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x = eng_();
    while (x >= limit) x = eng_();
    return x % n;
  }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    if (hi < lo) throw DomainError("uniform_int: empty range");
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi) - lo + 1));
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Index sampled proportionally to the given nonnegative weights.
  std::size_t weighted_index(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw DomainError("weighted_index: total weight must be positive");
    double r = uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      r -= weights[i];
      if (r < 0.0) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mlas
