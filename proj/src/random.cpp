#include "plurisign/random.hpp"

#include <stdexcept>

namespace plurisign {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::between: empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rational Rng::rational(std::int64_t lo, std::int64_t hi, std::int64_t den) {
  return make_rational(between(lo * den, hi * den), den);
}

GaussianRational Rng::gaussian(std::int64_t lo, std::int64_t hi, std::int64_t den) {
  Rational re = rational(lo, hi, den);
  Rational im = rational(lo, hi, den);
  return {re, im};
}

GaussianRational Rng::unit_circle() {
  // ((m^2 - k^2) + 2mk i) / (m^2 + k^2), and the four axis points.
  const std::uint64_t pick = below(10);
  if (pick == 0) return GaussianRational(1);
  if (pick == 1) return GaussianRational(-1);
  if (pick == 2) return GaussianRational::i();
  const std::int64_t m = between(1, 9);
  const std::int64_t k = between(1, 9);
  const std::int64_t den = m * m + k * k;
  std::int64_t re = m * m - k * k;
  if (below(2) == 1) re = -re;
  return {make_rational(re, den), make_rational(2 * m * k, den)};
}

}  // namespace plurisign
