#pragma once

#include <cstdint>
#include <random>

#include "plurisign/gaussian.hpp"

namespace plurisign {

/// Seeded generator with platform-independent output: only raw mt19937_64
/// words are used, never the library distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// k / den with k uniform in [lo*den, hi*den].
  Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t den);
  /// Both parts from rational(lo, hi, den).
  GaussianRational gaussian(std::int64_t lo, std::int64_t hi, std::int64_t den);
  /// A rational point on the unit circle with Im >= 0, from a Pythagorean triple.
  GaussianRational unit_circle();

 private:
  std::mt19937_64 engine_;
};

}  // namespace plurisign
