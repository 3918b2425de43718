#pragma once

// Seeded generator producing exact rationals on grids. The integer mapping is
// done here rather than through <random> distributions so that streams are
// identical across standard library implementations.

#include <cstdint>
#include <random>

#include "gdof/rational.hpp"

namespace gdof {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool coin(int num = 1, int den = 2) { return uniform_int(0, den - 1) < num; }

  /// Uniform point of the grid {lo + k (hi - lo) / steps : k = 0..steps}.
  Rational grid(const Rational& lo, const Rational& hi, int steps) {
    Rational r = lo + (hi - lo) * Rational(uniform_int(0, steps), steps);
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gdof
