#include <doctest.h>

#include "plurisign/expr.hpp"
#include "support.hpp"

using namespace plurisign;
using testing::complex_param;
using testing::random_scalar;
using testing::real_param;

namespace {

const std::vector<Parameter> kParams = {real_param("a"), real_param("b"), complex_param("z"), complex_param("w")};

Assignment random_point(Rng& rng) {
  return {{"a", rng.rational(-2, 2, 3)}, {"b", rng.rational(-2, 2, 3)}, {"z", rng.gaussian(-2, 2, 3)},
          {"w", rng.gaussian(-2, 2, 3)}};
}

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const Scalar x = random_scalar(rng, kParams);
    const Scalar y = random_scalar(rng, kParams);
    const Scalar z = random_scalar(rng, kParams);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x - x).is_zero());
    CHECK(x * Scalar(1) == x);
    CHECK((x * Scalar(0)).is_zero());
  }
}

TEST_CASE("conjugation is an involutive ring automorphism") {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const Scalar x = random_scalar(rng, kParams);
    const Scalar y = random_scalar(rng, kParams);
    CHECK(x.conj().conj() == x);
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK((x + y).conj() == x.conj() + y.conj());
    CHECK((x * x.conj()).is_real());
  }
}

TEST_CASE("instantiation is a ring homomorphism and commutes with conj") {
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const Scalar x = random_scalar(rng, kParams);
    const Scalar y = random_scalar(rng, kParams);
    const Assignment p = random_point(rng);
    CHECK(instantiate(x * y, p) == instantiate(x, p) * instantiate(y, p));
    CHECK(instantiate(x + y, p) == instantiate(x, p) + instantiate(y, p));
    CHECK(instantiate(x.conj(), p) == instantiate(x, p).conj());
  }
}

TEST_CASE("partial instantiation then full equals full") {
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    const Scalar x = random_scalar(rng, kParams, 6, 3);
    const Assignment p = random_point(rng);
    const Assignment half = {{"a", p.at("a")}, {"z", p.at("z")}};
    CHECK(instantiate(instantiate_partial(x, half), p) == instantiate(x, p));
  }
}

TEST_CASE("expression round trip") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const Scalar x = random_scalar(rng, kParams, 5, 3);
    CHECK(parse_expression(render(x), kParams) == x);
  }
  const std::vector<Parameter> ps = {real_param("t2"), real_param("lambda"), real_param("rho"), complex_param("D")};
  const Scalar e = parse_expression("(1/2)*t2*(lambda^2 + rho^2 - D - conj(D))", ps);
  const Scalar t2 = ps[0].symbol();
  const Scalar expect = t2 * ps[1].symbol().pow(2) * GaussianRational(make_rational(1, 2)) +
                        t2 * ps[2].symbol().pow(2) * GaussianRational(make_rational(1, 2)) -
                        t2 * (ps[3].symbol() + ps[3].conj_symbol()) * GaussianRational(make_rational(1, 2));
  CHECK(e == expect);
  CHECK(e.is_real());
  CHECK(parse_expression("re(D)", ps) == (ps[3].symbol() + ps[3].conj_symbol()) * GaussianRational(make_rational(1, 2)));
  CHECK(parse_expression("abs2(D+1)", ps) == (ps[3].symbol() + Scalar(1)) * (ps[3].conj_symbol() + Scalar(1)));
  CHECK_THROWS_AS(parse_expression("q + 1", ps), ParseError);
  CHECK_THROWS_AS(parse_expression("t2/lambda", ps), ParseError);
}

TEST_CASE("rewrite rules reduce to normal form") {
  const Parameter sigma = real_param("sigma");
  const RuleSet rules({{Monomial(sigma.indeterminate(), 2), Scalar(1)}});
  const Scalar s = sigma.symbol();
  CHECK(rules.reduce(s.pow(2)) == Scalar(1));
  CHECK(rules.reduce(s.pow(5)) == s);
  CHECK(rules.reduce(s.pow(4) + s) == Scalar(1) + s);

  const Parameter a = complex_param("A");
  const RuleSet unit({{Monomial(a.indeterminate()) * Monomial(a.indeterminate(true)), Scalar(1)}});
  const Scalar x = a.symbol() * a.symbol() * a.conj_symbol();
  CHECK(unit.reduce(x) == a.symbol());
  CHECK(unit.reduce(a.symbol().pow(3) * a.conj_symbol().pow(3)) == Scalar(1));

  // Reduction agrees with evaluation on the variety |A| = 1.
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const Scalar y = random_scalar(rng, {a}, 5, 4);
    const Assignment p = {{"A", rng.unit_circle()}};
    CHECK(instantiate(unit.reduce(y), p) == instantiate(y, p));
  }
  CHECK_THROWS_AS(RuleSet({{Monomial(sigma.indeterminate()), s.pow(2)}}), NonTerminatingRules);
}

TEST_CASE("exact quotient and content") {
  Rng rng(13);
  for (int t = 0; t < 60; ++t) {
    const Scalar x = random_scalar(rng, kParams, 3, 2);
    const Scalar y = random_scalar(rng, kParams, 3, 2);
    if (y.is_zero()) continue;
    const auto q = exact_quotient(x * y, y);
    REQUIRE(q.has_value());
    CHECK(*q == x);
  }
  const Scalar a = kParams[0].symbol();
  CHECK_FALSE(exact_quotient(a + Scalar(1), a).has_value());
  const Factored f = factor_content(Scalar(GaussianRational(4)) * a * a + Scalar(GaussianRational(6)) * a);
  CHECK(f.content == GaussianRational(2));
  CHECK(f.common == Monomial(kParams[0].indeterminate()));
}

TEST_CASE("equation normal form is unit and positive-factor invariant") {
  const std::vector<Parameter> ps = {{"r", ParamKind::Real, {Constraint{}}}, complex_param("u"), complex_param("v")};
  const Scalar r = ps[0].symbol();
  const Scalar e = ps[1].symbol() * r + ps[2].symbol();
  const Scalar base = normalize_equation(e, ps);
  CHECK(normalize_equation(e * Scalar::i(), ps) == base);
  CHECK(normalize_equation(e * GaussianRational(-3), ps) == base);
  CHECK(normalize_equation(e.conj(), ps) == base);
  CHECK(normalize_equation(e * r, ps) == base);
  const Scalar pos = r * r + Scalar(1);
  CHECK(normalize_equation(e * pos, ps, {pos}) == base);
  CHECK(normalize_equation(pos, ps, {pos}) == Scalar(1));
  const auto parts = real_equations(e, ps);
  CHECK(parts.size() == 2);
  for (const auto& p : parts) CHECK(p.is_real());
}

TEST_CASE("constraints") {
  Parameter x{"x", ParamKind::Real, {Constraint{Constraint::Kind::Positive}}};
  CHECK(constraint_violations({x}, {{"x", GaussianRational(1)}}).empty());
  CHECK_FALSE(constraint_violations({x}, {{"x", GaussianRational(0)}}).empty());
  CHECK_FALSE(constraint_violations({x}, {{"x", GaussianRational::i()}}).empty());
  Parameter a{"A", ParamKind::Complex, {Constraint{Constraint::Kind::UnitModulus}}};
  CHECK(constraint_violations({a}, {{"A", parse_gaussian("3/5+4/5i")}}).empty());
  CHECK_FALSE(constraint_violations({a}, {{"A", parse_gaussian("1+i")}}).empty());
  CHECK(x.signature() == "x∈ℝ>0");
}
