#include <doctest.h>

#include "support.hpp"

using namespace plurisign;
using testing::psd_by_minors;
using testing::random_vector;

namespace {

Matrix random_hermitian(Rng& rng, int n, bool make_psd) {
  Matrix h(n, Vector(n));
  if (make_psd) {
    // B B^* with a possibly rank-deficient B.
    const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<Vector> cols;
    for (int r = 0; r < rank; ++r) cols.push_back(random_vector(rng, n));
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (const auto& c : cols) h[j][k] += c[j] * c[k].conj();
      }
    }
    return h;
  }
  for (int j = 0; j < n; ++j) {
    h[j][j] = GaussianRational(rng.rational(-2, 3, 2));
    for (int k = j + 1; k < n; ++k) {
      h[j][k] = rng.gaussian(-2, 2, 2);
      h[k][j] = h[j][k].conj();
    }
  }
  return h;
}

GaussianRational quad(const Matrix& h, const Vector& x) {
  GaussianRational s;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = 0; k < x.size(); ++k) s += x[j].conj() * h[j][k] * x[k];
  }
  return s;
}

}  // namespace

TEST_CASE("exact PSD test agrees with the principal-minor oracle") {
  Rng rng(51);
  for (int t = 0; t < 400; ++t) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const Matrix h = random_hermitian(rng, n, t % 2 == 0);
    REQUIRE(is_hermitian(h));
    const PsdResult r = psd_test(h);
    CHECK(r.psd == psd_by_minors(h));
    if (!r.psd) {
      REQUIRE(r.negative_direction.has_value());
      const GaussianRational v = quad(h, *r.negative_direction);
      CHECK(v.is_real());
      CHECK(sgn(v.re()) < 0);
    }
  }
}

TEST_CASE("determinant and principal minors") {
  Rng rng(52);
  for (int t = 0; t < 50; ++t) {
    const Matrix h = random_hermitian(rng, 3, false);
    ScalarMatrix s(3, std::vector<Scalar>(3));
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) s[j][k] = Scalar(h[j][k]);
    }
    CHECK(determinant(s) == Scalar(testing::leibniz_det(h)));
    std::vector<std::uint32_t> masks;
    CHECK(principal_minors(s, &masks).size() == 7);
    CHECK(masks.size() == 7);
  }
}

TEST_CASE("sign of (1,1)-forms follows their Hermitian matrix") {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const int n = 3;
    const Matrix h = random_hermitian(rng, n, t % 2 == 0);
    Form p(n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) p += Form::pair(n, j + 1, k + 1) * Scalar(h[j][k] * GaussianRational::i());
    }
    REQUIRE(p.is_real());
    const SignVerdict v = sign_of_form(p);
    CHECK(v.nonneg() == psd_by_minors(h));
    if (v.not_nonneg()) CHECK(sgn(v.negative->value.re()) < 0);
  }
}

TEST_CASE("block certificates imply nonnegative test values") {
  Rng rng(54);
  const int n = 4;
  for (int t = 0; t < 30; ++t) {
    // Sum of (i eta ^ conj eta) ^ (i zeta ^ conj zeta): strongly positive (2,2)-form.
    Form p(n);
    for (int r = 0; r < 2; ++r) {
      p += wedge(simple_positive(n, random_vector(rng, n)), simple_positive(n, random_vector(rng, n)));
    }
    const SignVerdict v = sign_of_form(p, {32, static_cast<std::uint64_t>(t)});
    CHECK_FALSE(v.not_nonneg());
    for (int d = 0; d < 5; ++d) {
      const Form test = wedge(simple_positive(n, random_vector(rng, n)), simple_positive(n, random_vector(rng, n)));
      const GaussianRational val = vol_coefficient(wedge(p, test)).constant();
      CHECK(val.is_real());
      CHECK(sgn(val.re()) >= 0);
    }
  }
}

TEST_CASE("top and bottom degrees") {
  const int n = 3;
  CHECK(sign_of_form(Form::constant(n, Scalar(2))).tag == Sign::StrictlyPositive);
  CHECK(sign_of_form(volume_form(n) * Scalar(-1)).nonpos());
  CHECK(sign_of_form(Form(n)).tag == Sign::Zero);
  CHECK_THROWS(sign_of_form(Form::pair(n, 1, 2)));
}
