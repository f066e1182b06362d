#include <doctest.h>

#include "plurisign/gaussian.hpp"

using plurisign::GaussianRational;
using plurisign::parse_gaussian;

TEST_CASE("gaussian arithmetic") {
  const GaussianRational a(1, 2);
  CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
  CHECK(a * a.inverse() == GaussianRational(1));
  CHECK(a.norm() == 5);
  CHECK((a * a.conj()).is_real());
}
