#pragma once

#include <vector>

#include "plurisign/exterior.hpp"
#include "plurisign/positivity.hpp"
#include "plurisign/random.hpp"
#include "plurisign/scalar.hpp"

namespace testing {

using namespace plurisign;

inline Parameter real_param(const std::string& name) { return {name, ParamKind::Real, {}}; }
inline Parameter complex_param(const std::string& name) { return {name, ParamKind::Complex, {}}; }

/// Small random polynomial in the given parameters (and conjugates).
inline Scalar random_scalar(Rng& rng, const std::vector<Parameter>& params, int terms = 4, int max_deg = 2) {
  Scalar out;
  for (int t = 0; t < terms; ++t) {
    Scalar m(rng.gaussian(-3, 3, 2));
    const int deg = static_cast<int>(rng.between(0, max_deg));
    for (int d = 0; d < deg; ++d) {
      const Parameter& p = params[rng.below(params.size())];
      m = m * ((p.kind == ParamKind::Complex && rng.below(2) == 1) ? p.conj_symbol() : p.symbol());
    }
    out += m;
  }
  return out;
}

inline Vector random_vector(Rng& rng, int n, std::int64_t range = 2) {
  Vector v;
  for (int j = 0; j < n; ++j) v.push_back(rng.gaussian(-range, range, 2));
  return v;
}

/// Random form of bidegree (p, q) with constant coefficients.
inline Form random_form(Rng& rng, int n, int p, int q, int terms = 3) {
  Form out(n);
  const std::uint32_t full = (1u << n) - 1;
  for (int t = 0; t < terms; ++t) {
    std::uint32_t h = 0;
    std::uint32_t a = 0;
    while (__builtin_popcount(h) != p) h = static_cast<std::uint32_t>(rng.below(full + 1));
    while (__builtin_popcount(a) != q) a = static_cast<std::uint32_t>(rng.below(full + 1));
    out += Form::monomial(n, {h, a}, Scalar(rng.gaussian(-2, 2, 1)));
  }
  return out;
}

/// Determinant by the Leibniz permutation expansion.
inline GaussianRational leibniz_det(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  GaussianRational total;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    }
    GaussianRational term(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t j = 0; j < n; ++j) term *= m[j][perm[j]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// PSD iff every principal minor is >= 0 (Hermitian input).
inline bool psd_by_minors(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Matrix sub;
    for (std::size_t r = 0; r < n; ++r) {
      if (!(mask >> r & 1u)) continue;
      std::vector<GaussianRational> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (mask >> c & 1u) row.push_back(m[r][c]);
      }
      sub.push_back(row);
    }
    const GaussianRational d = leibniz_det(sub);
    if (!d.is_real() || sgn(d.re()) < 0) return false;
  }
  return true;
}

}  // namespace testing
