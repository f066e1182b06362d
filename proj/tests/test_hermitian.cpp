#include <doctest.h>

#include "plurisign/catalog.hpp"
#include "plurisign/expr.hpp"
#include "support.hpp"

using namespace plurisign;

namespace {

Scalar expr(const std::string& text, const MetricSpec& m) { return parse_expression(text, m.params); }

Assignment scaled(const Assignment& a, const MetricSpec& m, const Rational& c) {
  Assignment out = a;
  for (const auto& p : m.params) {
    if (out.count(p.name)) out[p.name] = out[p.name] * GaussianRational(c);
  }
  return out;
}

const std::vector<std::string> kThreeFolds = {"Np", "Ni", "Nii", "Niii", "Si", "Sii", "Siii1", "Siii2", "Siii3",
                                              "Siii4", "Siv1", "Siv2", "Siv3", "Sv"};

}  // namespace

TEST_CASE("n = 3 positivity minors are the displayed inequalities") {
  const MetricSpec m = generic_metric(3);
  const std::vector<std::string> want = {
      "r2", "s2", "t2", "r2*s2 - u*conj(u)", "r2*t2 - z*conj(z)", "s2*t2 - v*conj(v)",
      "r2*s2*t2 + 2*re(i*conj(u)*z*conj(v)) - t2*u*conj(u) - r2*v*conj(v) - s2*z*conj(z)"};
  REQUIRE(m.positivity.size() == want.size());
  for (std::size_t j = 0; j < want.size(); ++j) CHECK(m.positivity[j] == expr(want[j], m));
  // 2 omega in the displayed shape.
  const Form two_omega = m.omega * Scalar(2);
  CHECK(two_omega.coefficient(parse_monomial("1~1", 3)) == expr("i*r2", m));
  CHECK(two_omega.coefficient(parse_monomial("1~2", 3)) == expr("u", m));
  CHECK(two_omega.coefficient(parse_monomial("2~1", 3)) == expr("-conj(u)", m));
  CHECK(two_omega.coefficient(parse_monomial("3~2", 3)) == expr("-conj(v)", m));
  CHECK(two_omega.coefficient(parse_monomial("1~3", 3)) == expr("z", m));
  CHECK(m.omega.is_real());
}

TEST_CASE("inadmissible metrics name the violated minor") {
  const MetricSpec m = generic_metric(3);
  const Assignment bad = {{"r2", 1}, {"s2", 1}, {"t2", 1}, {"u", 2}, {"v", 0}, {"z", 0}};
  try {
    specialize(m, bad);
    FAIL("expected InadmissibleMetric");
  } catch (const InadmissibleMetric& e) {
    CHECK(std::string(e.what()).find("> 0 fails") != std::string::npos);
  }
  CHECK_THROWS_AS(specialize(m, {{"r2", -1}}), InadmissibleMetric);
  CHECK_THROWS(specialize(m, {{"q", 1}}));
}

TEST_CASE("rigidity identity holds for every n = 3 family") {
  for (const auto& id : kThreeFolds) {
    CAPTURE(id);
    CHECK(rigidity_identity_check(instantiate_family(id), generic_metric(3)));
  }
}

TEST_CASE("plurineg terms expand to the short forms for n = 3, 4, 5") {
  // n = 5 example: nilpotent, d phi4 = phi^{12} + phi^{1 2-bar}, d phi5 = phi^{13} + phi^{3 1-bar}.
  const int n5 = 5;
  StructureSpec s5(n5,
                   {Form(n5), Form(n5), Form(n5),
                    Form::monomial(n5, parse_monomial("12", n5)) + Form::monomial(n5, parse_monomial("1~2", n5)),
                    Form::monomial(n5, parse_monomial("13", n5)) + Form::monomial(n5, parse_monomial("3~1", n5))},
                   {});
  REQUIRE(check_structure(s5).ok());
  struct Case {
    StructureSpec s;
    MetricSpec m;
  };
  const std::vector<Case> cases = {{instantiate_family("Ni"), generic_metric(3)},
                                   {instantiate_family("NakIV5"), generic_metric(4, true)},
                                   {instantiate_family("EFV_A"), generic_metric(4, true)},
                                   {s5, generic_metric(5, true)}};
  for (const auto& c : cases) {
    const int n = c.s.n();
    CAPTURE(n);
    const auto w = [&](int k) { return power(c.m, k); };
    const auto dd = [&](int k) { return c.s.reduce(ddc(c.s, w(k))); };
    const auto S = plurineg_terms(c.s, c.m);
    REQUIRE(static_cast<int>(S.size()) == n - 2);
    const auto same = [&](const Form& a, const Form& b) { return c.s.reduce(a) == c.s.reduce(b); };
    if (n == 3) {
      CHECK(same(S[0], dd(1) * Scalar(3)));
    } else if (n == 4) {
      CHECK(same(S[0], (dd(2) * Scalar(3) - wedge(w(1), dd(1)) * Scalar(2)) * Scalar(2)));
      CHECK(same(S[1], dd(1) * Scalar(4)));
    } else {
      CHECK(same(S[0], (dd(3) * Scalar(2) - wedge(w(1), dd(2)) * Scalar(2) + wedge(w(2), dd(1))) * Scalar(5)));
      CHECK(same(S[1], (dd(2) - wedge(dd(1), w(1))) * Scalar(10)));
      CHECK(same(S[2], dd(1) * Scalar(5)));
    }
  }
}

TEST_CASE("verdicts are invariant under rescaling the metric") {
  Rng rng(41);
  for (const auto& id : kThreeFolds) {
    CAPTURE(id);
    const AlgebraDocument& doc = family(id);
    const CurvaturePack pack = curvature_pack(instantiate_family(id), family_metric(doc));
    for (int t = 0; t < 4; ++t) {
      const Assignment a = sample_assignment(pack, {}, rng);
      const auto r1 = classify_at(pack, a);
      const auto r2 = classify_at(pack, scaled(a, pack.metric, make_rational(7, 3)));
      for (std::size_t f = 0; f < r1.fields().size(); ++f) {
        CHECK(r1.fields()[f].second->truth == r2.fields()[f].second->truth);
      }
    }
  }
}

TEST_CASE("sampled metrics are admissible; guan_li implies gauduchon; kahler implies pluriclosed") {
  Rng rng(42);
  for (const auto& id : family_ids()) {
    CAPTURE(id);
    const AlgebraDocument& doc = family(id);
    const CurvaturePack pack = curvature_pack(instantiate_family(id), family_metric(doc));
    for (int t = 0; t < 6; ++t) {
      const Assignment a = sample_assignment(pack, {}, rng);
      CHECK(admissibility_violations(pack, a).empty());
      const auto r = classify_at(pack, a);
      if (r.guan_li.truth == Truth::True) CHECK(r.gauduchon.truth == Truth::True);
      if (r.kahler.truth == Truth::True) {
        CHECK(r.pluriclosed.truth == Truth::True);
        CHECK(r.balanced.truth == Truth::True);
      }
      if (r.pluriclosed.truth == Truth::True) {
        CHECK(r.pluripositive.truth == Truth::True);
        CHECK(r.plurinegative.truth == Truth::True);
      }
    }
  }
}

TEST_CASE("supremal epsilon on NakIV5 agrees with the closed-form minimum") {
  const AlgebraDocument& doc = family("NakIV5");
  const auto oracle = [](const GaussianRational& a) {
    const Rational na = a.norm();
    const Rational nb = (a + GaussianRational(1)).norm();
    Rational best = 2 * nb / (1 + na);
    best = std::min(best, Rational(2 * na / (1 + nb)));
    best = std::min(best, Rational(2 / (na + nb)));
    return best;
  };
  for (const char* alpha : {"1", "2", "i", "-1/2+i", "1/3", "-3", "2-i"}) {
    CAPTURE(alpha);
    const GaussianRational a = parse_gaussian(alpha);
    const CurvaturePack pack = curvature_pack(instantiate_family("NakIV5", {{"alpha", a}}),
                                              specialize(family_metric(doc), {{"a1", 1}, {"a2", 1}, {"a3", 1}, {"a4", 1}}));
    const EpsilonBound b = epsilon_bound(pack, {});
    REQUIRE(b.feasible);
    REQUIRE(b.sup.has_value());
    CHECK(b.exact);
    CHECK(*b.sup == oracle(a));
    CHECK(higher_dim_condition(pack, {}, *b.sup).truth == Truth::True);
    CHECK(higher_dim_condition(pack, {}, *b.sup + make_rational(1, 1000)).truth == Truth::False);
  }
}

TEST_CASE("higher-dimensional condition is monotone in epsilon") {
  Rng rng(43);
  for (const auto& id : {"EFV_B", "NakIV5", "NakIV2"}) {
    CAPTURE(id);
    const CurvaturePack pack = curvature_pack(instantiate_family(id), family_metric(family(id)));
    for (int t = 0; t < 3; ++t) {
      const Assignment a = sample_assignment(pack, {}, rng);
      bool seen_false = false;
      for (int k = 1; k <= 12; ++k) {
        const Truth v = higher_dim_condition(pack, a, make_rational(k, 4)).truth;
        if (seen_false) CHECK(v != Truth::True);
        if (v == Truth::False) seen_false = true;
      }
    }
  }
}

TEST_CASE("numeric mode requires a full assignment") {
  ClassifyOptions opt;
  opt.mode = Mode::Numeric;
  CHECK_THROWS_AS(classify(instantiate_family("Siii2"), generic_metric(3), opt), MissingAssignment);
  const MetricSpec m = specialize(generic_metric(3), {{"r2", 2}, {"s2", 2}, {"t2", 2}, {"u", 0}, {"v", 0}, {"z", 0}});
  const auto r = classify(instantiate_family("Siii2"), m, opt);
  CHECK(r.pluripositive.truth == Truth::True);
  CHECK(r.pluriclosed.truth == Truth::False);
}

TEST_CASE("symbolic classification gives conditions") {
  const auto r = classify(instantiate_family("Ni", {{"rho", 1}, {"lambda", 1}}), generic_metric(3));
  CHECK(r.pluriclosed.truth == Truth::Conditional);
  CHECK_FALSE(r.pluriclosed.conditions.empty());
  const auto sii = classify(instantiate_family("Sii"), generic_metric(3));
  CHECK(sii.pluripositive.truth == Truth::True);
  CHECK(sii.pluriclosed.truth == Truth::False);
}
