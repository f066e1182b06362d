#include "plurisign/hermitian.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace plurisign {

namespace {

Parameter real_positive(const std::string& name) {
  Constraint c;
  c.kind = Constraint::Kind::Positive;
  return {name, ParamKind::Real, {c}};
}

Parameter complex_free(const std::string& name) { return {name, ParamKind::Complex, {}}; }

std::string pair_name(const std::string& stem, int j, int k, int n) {
  if (n < 10) return stem + std::to_string(j) + std::to_string(k);
  return stem + std::to_string(j) + "_" + std::to_string(k);
}

Scalar without_content(const Scalar& a) {
  const Factored f = factor_content(a);
  if (f.content.is_real() && sgn(f.content.re()) > 0) return a * f.content.inverse();
  return a;
}

Form map_instantiate(const Form& a, const Assignment& values) {
  return a.map_coefficients([&](const Scalar& c) { return instantiate_partial(c, values); });
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

MetricSpec metric_from_gram(ScalarMatrix gram, std::vector<Parameter> params) {
  const int n = static_cast<int>(gram.size());
  MetricSpec m;
  m.omega = Form(n);
  const Scalar half_i(GaussianRational(Rational(0), Rational(1, 2)));
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(gram[j].size()) != n) throw std::invalid_argument("Gram matrix is not square");
    for (int k = 0; k < n; ++k) {
      if (!(gram[j][k] == gram[k][j].conj())) throw std::invalid_argument("Gram matrix is not conjugate-symmetric");
      m.omega += Form::pair(n, j + 1, k + 1) * (half_i * gram[j][k]);
    }
  }
  for (int s = 1; s <= n; ++s) {
    ScalarMatrix sub(s, std::vector<Scalar>(s));
    for (int a = 0; a < s; ++a) {
      for (int b = 0; b < s; ++b) sub[a][b] = gram[a][b];
    }
    m.positivity.push_back(without_content(determinant(sub)));
  }
  m.gram = std::move(gram);
  m.params = std::move(params);
  return m;
}

MetricSpec generic_metric(int n, bool diagonal) {
  if (n < 1 || n > kMaxDimension) throw DimensionMismatch("metric dimension out of range");
  ScalarMatrix g(n, std::vector<Scalar>(n));
  std::vector<Parameter> params;
  const Scalar i = Scalar::i();
  if (n == 3) {
    const char* diag[] = {"r2", "s2", "t2"};
    for (int j = 0; j < 3; ++j) {
      params.push_back(real_positive(diag[j]));
      g[j][j] = params.back().symbol();
    }
    if (!diagonal) {
      // (j, k, name): G_jk = -i p, G_kj = i conj(p).
      const std::tuple<int, int, const char*> off[] = {{0, 1, "u"}, {1, 2, "v"}, {0, 2, "z"}};
      for (const auto& [j, k, name] : off) {
        params.push_back(complex_free(name));
        g[j][k] = -(i * params.back().symbol());
        g[k][j] = i * params.back().conj_symbol();
      }
    }
    MetricSpec m = metric_from_gram(g, params);
    // Diagonal entries, the 2x2 minors, then the determinant.
    std::vector<std::uint32_t> subsets;
    auto minors = principal_minors(g, &subsets);
    m.positivity.clear();
    const std::uint32_t pair_order[] = {3, 5, 6};  // {1,2}, {1,3}, {2,3}
    for (int j = 0; j < 3; ++j) m.positivity.push_back(g[j][j]);
    for (std::uint32_t mask : pair_order) {
      auto it = std::find(subsets.begin(), subsets.end(), mask);
      const Scalar& minor = minors[static_cast<std::size_t>(it - subsets.begin())];
      if (!minor.is_constant() || minor.constant().is_zero()) m.positivity.push_back(minor);
    }
    m.positivity.push_back(minors.back());
    // Duplicates arise in the diagonal variant (r2*s2 etc.); they are harmless.
    return m;
  }
  for (int j = 0; j < n; ++j) {
    params.push_back(real_positive("a" + std::to_string(j + 1)));
    g[j][j] = params.back().symbol() * GaussianRational(2);
  }
  if (!diagonal) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        params.push_back(complex_free(pair_name("g", j + 1, k + 1, n)));
        g[j][k] = -(i * params.back().symbol()) * GaussianRational(2);
        g[k][j] = i * params.back().conj_symbol() * GaussianRational(2);
      }
    }
  }
  return metric_from_gram(g, params);
}

MetricSpec standard_metric(int n) {
  ScalarMatrix g(n, std::vector<Scalar>(n));
  for (int j = 0; j < n; ++j) g[j][j] = Scalar(2);
  return metric_from_gram(g, {});
}

MetricSpec specialize(const MetricSpec& m, const Assignment& values) {
  for (const auto& [name, v] : values) {
    if (std::none_of(m.params.begin(), m.params.end(), [&](const Parameter& p) { return p.name == name; })) {
      throw std::invalid_argument("unknown metric parameter '" + name + "'");
    }
  }
  if (auto bad = constraint_violations(m.params, values); !bad.empty()) throw InadmissibleMetric(bad.front());
  MetricSpec out;
  out.omega = map_instantiate(m.omega, values);
  out.gram = m.gram;
  for (auto& row : out.gram) {
    for (auto& e : row) e = instantiate_partial(e, values);
  }
  for (const auto& p : m.params) {
    if (!values.count(p.name)) out.params.push_back(p);
  }
  for (const auto& q : m.positivity) {
    const Scalar v = instantiate_partial(q, values);
    if (v.is_constant()) {
      const GaussianRational c = v.constant();
      if (!c.is_real() || sgn(c.re()) <= 0) {
        throw InadmissibleMetric("metric not positive definite: " + render(q, Style::Pretty) + " > 0 fails (value " +
                                 c.str() + ")");
      }
      continue;
    }
    out.positivity.push_back(v);
  }
  return out;
}

std::vector<std::string> off_diagonal_parameters(const MetricSpec& m) {
  std::vector<std::string> out;
  for (const auto& p : m.params) {
    if (p.kind == ParamKind::Complex) out.push_back(p.name);
  }
  return out;
}

Form power(const MetricSpec& m, int k) {
  if (k < 0 || k > m.n()) throw std::invalid_argument("power: k out of range");
  return power(m.omega, k);
}

CurvatureForms curvature_forms(const StructureSpec& s, const MetricSpec& m) {
  if (s.n() != m.n()) throw DimensionMismatch("structure and metric have different dimensions");
  CurvatureForms out;
  Form pk = Form::constant(m.n(), Scalar(1));
  for (int k = 1; k < m.n(); ++k) {
    pk = s.reduce(wedge(pk, m.omega));
    out.ddc_power.push_back(ddc(s, pk));
  }
  out.torsion = s.reduce(wedge(differential(s, m.omega), dc(s, m.omega)));
  return out;
}

namespace {

ConditionSet equations_of(const Form& f, const std::vector<Parameter>& params, const std::vector<Scalar>& positive,
                          const std::string& what) {
  ConditionSet set;
  std::set<std::string> seen;
  for (const auto& [mono, c] : f.terms()) {
    for (const Scalar& eq : real_equations(c, params, positive)) {
      if (!seen.insert(eq.str()).second) continue;
      set.conditions.push_back({eq, Relation::Eq, what + " coefficient of " + mono.str()});
    }
  }
  return set;
}

std::vector<Parameter> all_params(const StructureSpec& s, const MetricSpec& m) {
  std::vector<Parameter> out = s.params();
  out.insert(out.end(), m.params.begin(), m.params.end());
  return out;
}

}  // namespace

ConditionSet balanced_condition(const StructureSpec& s, const MetricSpec& m) {
  const Form top = differential(s, s.reduce(power(m.omega, m.n() - 1)));
  return equations_of(top, all_params(s, m), m.positivity, "d(omega^" + std::to_string(m.n() - 1) + ")");
}

Form plurineg_term(const StructureSpec& s, const MetricSpec& m, int ell) {
  const int n = m.n();
  if (ell < 0 || ell > n - 3) throw std::invalid_argument("plurineg_term: l out of range");
  Form total(n);
  Form pk = Form::constant(n, Scalar(1));
  for (int k = 1; k <= n - ell - 2; ++k) {
    pk = s.reduce(wedge(pk, m.omega));
    const long c = binomial(n, k) * binomial(n - k - 2, ell) * (((n - k - ell) % 2 == 0) ? 1 : -1);
    total += wedge(ddc(s, pk), power(m.omega, n - k - 2 - ell)) * Scalar(c);
  }
  return s.reduce(total);
}

std::vector<Form> plurineg_terms(const StructureSpec& s, const MetricSpec& m) {
  std::vector<Form> out;
  for (int ell = 0; ell <= m.n() - 3; ++ell) out.push_back(plurineg_term(s, m, ell));
  return out;
}

bool rigidity_identity_check(const StructureSpec& s, const MetricSpec& m) {
  const int n = m.n();
  if (n < 3) throw std::invalid_argument("rigidity identity needs n >= 3");
  const Form& w = m.omega;
  const Form lhs = s.reduce(ddc(s, s.reduce(power(w, n - 1))) * Scalar(GaussianRational(make_rational(1, n - 1))));
  const Form torsion = s.reduce(wedge(differential(s, w), dc(s, w)));
  const Form inner = wedge(ddc(s, w), w) + torsion * Scalar(n - 2);
  const Form rhs = s.reduce(wedge(inner, power(w, n - 3)));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Symbolic: return "symbolic";
    case Mode::Numeric: return "numeric";
    case Mode::Sampled: return "sampled";
  }
  return "";
}

Mode parse_mode(const std::string& text) {
  if (text == "symbolic") return Mode::Symbolic;
  if (text == "numeric") return Mode::Numeric;
  if (text == "sampled") return Mode::Sampled;
  throw std::invalid_argument("unknown mode '" + text + "' (symbolic, numeric, sampled)");
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
    case Truth::Conditional: return "conditional";
  }
  return "";
}

std::vector<std::pair<std::string, const Verdict*>> ClassificationReport::fields() const {
  return {{"kahler", &kahler},         {"pluriclosed", &pluriclosed}, {"pluripositive", &pluripositive},
          {"plurinegative", &plurinegative}, {"balanced", &balanced},     {"gauduchon", &gauduchon},
          {"guan_li", &guan_li},       {"plurineg_n", &plurineg_n},   {"higher_dim", &higher_dim}};
}

CurvaturePack curvature_pack(const StructureSpec& s, const MetricSpec& m) {
  if (s.n() != m.n()) throw DimensionMismatch("structure and metric have different dimensions");
  for (const auto& p : m.params) {
    if (s.find_param(p.name)) throw ParameterMismatch("metric parameter '" + p.name + "' clashes with the structure");
  }
  s.check_parameters(m.omega, m.params);
  CurvaturePack pack;
  pack.structure = s;
  pack.metric = m;
  const int n = m.n();
  pack.d_omega = differential(s, m.omega);
  pack.curvature = curvature_forms(s, m);
  pack.d_omega_top = differential(s, s.reduce(power(m.omega, n - 1)));
  if (n >= 3) pack.plurineg = plurineg_terms(s, m);
  for (int q = 2; q <= n - 2; ++q) {
    pack.omega_ddc.push_back(s.reduce(wedge(m.omega, pack.curvature.ddc_power[q - 2])));
  }
  return pack;
}

// ---------------------------------------------------------------------------
// Exact classification at a point

namespace {

Verdict vanishing_at(const Form& f, const std::string& what) {
  Verdict v;
  if (f.is_zero()) {
    v.truth = Truth::True;
    v.certificate = what + " = 0";
  } else {
    v.truth = Truth::False;
    const auto& [m, c] = *f.terms().begin();
    v.certificate = what + " has coefficient " + render(c) + " on " + m.str();
  }
  return v;
}

Verdict from_sign(const SignVerdict& s, bool want_nonneg, const std::string& what) {
  Verdict v;
  v.sign = s;
  if (want_nonneg ? s.nonneg() : s.nonpos()) {
    v.truth = Truth::True;
    v.certificate = what + ": " + to_string(s.tag) + (s.certificate.empty() ? "" : " (" + s.certificate + ")");
  } else if (want_nonneg ? s.not_nonneg() : s.not_nonpos()) {
    v.truth = Truth::False;
    const Witness& w = want_nonneg ? *s.negative : *s.positive;
    v.certificate = what + ": " + to_string(s.tag) + ", test direction value " + w.value.str();
  } else {
    v.truth = Truth::Unknown;
    v.note = s.reason;
    v.certificate = what + ": " + to_string(s.tag);
  }
  return v;
}

SignOptions sign_options(const ClassifyOptions& opt) { return {opt.directions, opt.seed}; }

Truth conjunction(const std::vector<Truth>& parts) {
  bool unknown = false;
  bool conditional = false;
  for (Truth t : parts) {
    if (t == Truth::False) return Truth::False;
    if (t == Truth::Unknown) unknown = true;
    if (t == Truth::Conditional) conditional = true;
  }
  if (conditional) return Truth::Conditional;
  if (unknown) return Truth::Unknown;
  return Truth::True;
}

Form inst(const StructureSpec& s, const Form& f, const Assignment& values) {
  return s.reduce(map_instantiate(f, values));
}

/// Diagonal coefficients on prod_{k in L} i phi^{k~k}; nullopt if f has off-diagonal terms.
std::optional<std::map<std::uint32_t, Rational>> diagonal_part(const Form& f) {
  std::map<std::uint32_t, Rational> out;
  for (const auto& [m, c] : f.terms()) {
    if (m.holo != m.anti) return std::nullopt;
    Form unit = Form::constant(f.n(), Scalar(1));
    for (int b = 0; b < f.n(); ++b) {
      if (m.holo & (1U << b)) unit = wedge(unit, Form::pair(f.n(), b + 1, b + 1) * Scalar::i());
    }
    const GaussianRational v = c.constant() / unit.coefficient(m).constant();
    if (!v.is_real()) return std::nullopt;
    out[m.holo] = v.re();
  }
  return out;
}

}  // namespace

Verdict higher_dim_condition(const CurvaturePack& pack, const Assignment& values, const Rational& eps,
                             const ClassifyOptions& opt) {
  const StructureSpec& s = pack.structure;
  const int n = pack.metric.n();
  if (n < 3) throw std::invalid_argument("higher_dim_condition needs n >= 3");
  std::vector<Truth> parts;
  Verdict v;
  const Verdict first = from_sign(sign_of_form(inst(s, pack.curvature.ddc_power[0], values), sign_options(opt)), true,
                                  "dd^c omega >= 0");
  parts.push_back(first.truth);
  std::string cert = first.certificate;
  for (int q = 2; q <= n - 2; ++q) {
    const Form f = inst(s, pack.curvature.ddc_power[q - 1], values) -
                   inst(s, pack.omega_ddc[q - 2], values) * Scalar(GaussianRational(eps));
    const std::string what = "dd^c omega^" + std::to_string(q) + " - eps omega ^ dd^c omega^" + std::to_string(q - 1);
    const Verdict part = from_sign(sign_of_form(f, sign_options(opt)), true, what + " >= 0");
    parts.push_back(part.truth);
    if (q == 2) v.sign = part.sign;
    cert += "; " + part.certificate;
    if (part.truth == Truth::Unknown) v.note = part.note;
  }
  if (!v.sign) v.sign = first.sign;
  v.truth = conjunction(parts);
  v.certificate = "eps = " + to_string(eps) + ": " + cert;
  return v;
}

EpsilonBound epsilon_bound(const CurvaturePack& pack, const Assignment& values, const ClassifyOptions& opt) {
  const StructureSpec& s = pack.structure;
  const int n = pack.metric.n();
  EpsilonBound b;
  const SignVerdict base = sign_of_form(inst(s, pack.curvature.ddc_power[0], values), sign_options(opt));
  if (!base.nonneg()) {
    b.exact = base.not_nonneg();
    return b;
  }
  bool diagonal = true;
  std::optional<Rational> sup;
  Rational inf(0);
  bool feasible = true;
  for (int q = 2; q <= n - 2 && diagonal; ++q) {
    const auto p = diagonal_part(inst(s, pack.curvature.ddc_power[q - 1], values));
    const auto w = diagonal_part(inst(s, pack.omega_ddc[q - 2], values));
    if (!p || !w) {
      diagonal = false;
      break;
    }
    std::set<std::uint32_t> keys;
    for (const auto& [k, c] : *p) keys.insert(k);
    for (const auto& [k, c] : *w) keys.insert(k);
    for (auto k : keys) {
      const Rational pk = p->count(k) ? p->at(k) : Rational(0);
      const Rational wk = w->count(k) ? w->at(k) : Rational(0);
      if (sgn(wk) > 0) {
        const Rational r = pk / wk;
        if (!sup || r < *sup) sup = r;
      } else if (sgn(wk) < 0) {
        const Rational r = pk / wk;  // eps >= r
        if (r > inf) inf = r;
      } else if (sgn(pk) < 0) {
        feasible = false;
      }
    }
  }
  if (diagonal) {
    b.exact = true;
    b.sup = sup;
    b.inf = inf;
    b.feasible = feasible && (!sup || (*sup > inf && sgn(*sup) > 0) || (*sup == inf && sgn(*sup) > 0));
    return b;
  }
  // Bisection on exact verdicts.
  auto ok = [&](const Rational& e) { return higher_dim_condition(pack, values, e, opt).truth == Truth::True; };
  std::optional<Rational> inside;
  for (int e = -10; e <= 10 && !inside; ++e) {
    Rational t = e < 0 ? Rational(1, 1U << (-e)) : Rational(1U << e, 1);
    if (ok(t)) inside = t;
  }
  if (!inside) return b;
  b.feasible = true;
  Rational lo = *inside;
  Rational hi = lo * 2;
  while (ok(hi) && hi < Rational(1 << 20)) {
    lo = hi;
    hi *= 2;
  }
  if (ok(hi)) {
    b.sup.reset();
  } else {
    for (int it = 0; it < 40; ++it) {
      Rational mid = (lo + hi) / 2;
      if (ok(mid)) lo = mid;
      else hi = mid;
    }
    b.sup = lo;
  }
  Rational a(0);
  Rational c = *inside;
  if (!ok(Rational(1, 1 << 20))) {
    for (int it = 0; it < 40; ++it) {
      Rational mid = (a + c) / 2;
      if (ok(mid)) c = mid;
      else a = mid;
    }
    b.inf = a;
  }
  return b;
}

ClassificationReport classify_at(const CurvaturePack& pack, const Assignment& values, const ClassifyOptions& opt) {
  const StructureSpec& s = pack.structure;
  const int n = pack.metric.n();
  ClassificationReport r;
  r.label = s.label();
  r.mode = Mode::Numeric;
  r.n = n;
  r.values = values;
  r.epsilon = opt.epsilon;
  const SignOptions so = sign_options(opt);

  const Form ddc1 = inst(s, pack.curvature.ddc_power[0], values);
  const Form torsion = inst(s, pack.curvature.torsion, values);
  const Form gaud = inst(s, pack.curvature.ddc_power[n - 2], values);
  for (const auto& [m, c] : ddc1.terms()) {
    if (!c.is_constant()) throw MissingAssignment("classification needs every parameter assigned");
  }

  r.kahler = vanishing_at(inst(s, pack.d_omega, values), "d omega");
  r.pluriclosed = vanishing_at(ddc1, "dd^c omega");
  const SignVerdict sign = sign_of_form(ddc1, so);
  r.pluripositive = from_sign(sign, true, "dd^c omega >= 0");
  r.plurinegative = from_sign(sign, false, "dd^c omega <= 0");
  r.balanced = vanishing_at(inst(s, pack.d_omega_top, values), "d omega^" + std::to_string(n - 1));
  r.gauduchon = vanishing_at(gaud, "dd^c omega^" + std::to_string(n - 1));
  {
    const Verdict t = vanishing_at(torsion, "d omega ^ d^c omega");
    r.guan_li.truth = conjunction({r.pluriclosed.truth, t.truth});
    r.guan_li.certificate = r.pluriclosed.certificate + "; " + t.certificate;
  }
  {
    std::vector<Truth> parts{r.gauduchon.truth};
    std::string cert = r.gauduchon.certificate;
    for (std::size_t ell = 0; ell < pack.plurineg.size(); ++ell) {
      const Form sl = inst(s, pack.plurineg[ell], values);
      const int q = n - 1 - static_cast<int>(ell);
      Verdict part = from_sign(sign_of_form(sl, so), false, "S_" + std::to_string(ell) + " <= 0");
      part.note = q == n - 1 ? "exact (Gram-of-lines)"
                             : "weak positivity against simple test forms; strong certificate when found";
      parts.push_back(part.truth);
      cert += "; " + part.certificate;
      r.plurineg_parts.push_back(std::move(part));
    }
    r.plurineg_n.truth = conjunction(parts);
    r.plurineg_n.certificate = cert;
  }
  if (n >= 3) {
    r.epsilon_bound = epsilon_bound(pack, values, opt);
    if (opt.epsilon) {
      r.higher_dim = higher_dim_condition(pack, values, *opt.epsilon, opt);
    } else {
      r.higher_dim.truth = Truth::Unknown;
      r.higher_dim.note = "no epsilon supplied";
    }
  } else {
    r.higher_dim.truth = Truth::Unknown;
    r.higher_dim.note = "needs n >= 3";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

GaussianRational sample_param(const Parameter& p, Rng& rng) {
  if (p.has(Constraint::Kind::Binary)) return GaussianRational(static_cast<long>(rng.below(2)));
  if (p.has(Constraint::Kind::Sign)) return GaussianRational(rng.below(2) ? 1L : -1L);
  if (p.kind == ParamKind::Complex) {
    if (p.has(Constraint::Kind::UnitModulus)) return rng.unit_circle();
    GaussianRational z = rng.gaussian(-2, 2, 4);
    if (p.has(Constraint::Kind::ImNonneg) && sgn(z.im()) < 0) z = {z.re(), -z.im()};
    return z;
  }
  for (const auto& c : p.constraints) {
    if (c.kind == Constraint::Kind::Interval) {
      const Rational t = make_rational(static_cast<std::int64_t>(rng.below(9)), 8);
      return GaussianRational(Rational(c.lo + (c.hi - c.lo) * t));
    }
  }
  if (p.has(Constraint::Kind::Positive)) return GaussianRational(rng.rational(1, 4, 4) + Rational(0));
  if (p.has(Constraint::Kind::Nonneg)) return GaussianRational(rng.rational(0, 4, 4));
  return GaussianRational(rng.rational(-2, 2, 4));
}

}  // namespace

std::vector<std::string> admissibility_violations(const CurvaturePack& pack, const Assignment& values) {
  std::vector<std::string> out = constraint_violations(pack.structure.params(), values);
  auto more = constraint_violations(pack.metric.params, values);
  out.insert(out.end(), more.begin(), more.end());
  for (const auto& group : pack.structure.nonvanishing()) {
    bool all_zero = true;
    for (const auto& g : group) {
      auto it = values.find(g);
      if (it == values.end() || !it->second.is_zero()) all_zero = false;
    }
    if (all_zero) {
      std::string names;
      for (const auto& g : group) names += (names.empty() ? "" : ", ") + g;
      out.push_back("(" + names + ") must not all vanish");
    }
  }
  for (const auto& q : pack.metric.positivity) {
    const Scalar v = instantiate_partial(q, values);
    if (!v.is_constant()) continue;
    const GaussianRational c = v.constant();
    if (!c.is_real() || sgn(c.re()) <= 0) {
      out.push_back("metric not positive definite: " + render(q, Style::Pretty) + " > 0 fails (value " + c.str() + ")");
    }
  }
  return out;
}

Assignment sample_assignment(const CurvaturePack& pack, const Assignment& fixed, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Assignment a = fixed;
    std::vector<const Parameter*> deferred;
    auto fill = [&](const std::vector<Parameter>& params) {
      for (const auto& p : params) {
        if (a.count(p.name)) continue;
        if (p.has(Constraint::Kind::Reciprocal)) {
          deferred.push_back(&p);
          continue;
        }
        a[p.name] = sample_param(p, rng);
      }
    };
    fill(pack.structure.params());
    fill(pack.metric.params);
    for (const Parameter* p : deferred) {
      for (const auto& c : p->constraints) {
        if (c.kind == Constraint::Kind::Reciprocal && a.count(c.other) && !a.at(c.other).is_zero()) {
          a[p->name] = GaussianRational(c.factor) / a.at(c.other);
        }
      }
    }
    if (admissibility_violations(pack, a).empty()) return a;
  }
  throw std::runtime_error("could not sample an admissible assignment");
}

// ---------------------------------------------------------------------------
// Symbolic classification

namespace {

bool equation_never_holds(const Scalar& c, const SignProver& prover) {
  return prover.nonzero(c) || prover.nonzero(c * GaussianRational::i());
}

Verdict vanishing_symbolic(const Form& f, const std::vector<Parameter>& params, const std::vector<Scalar>& positive,
                           const SignProver& prover, const std::string& what) {
  Verdict v;
  if (f.is_zero()) {
    v.truth = Truth::True;
    v.certificate = what + " = 0 identically";
    return v;
  }
  v.conditions = equations_of(f, params, positive, what);
  for (const auto& [m, c] : f.terms()) {
    if (equation_never_holds(c, prover) || equation_never_holds(normalize_equation(c, params), prover)) {
      v.truth = Truth::False;
      v.certificate = what + ": coefficient on " + m.str() + " never vanishes (" + render(c, Style::Pretty) + ")";
      return v;
    }
  }
  v.truth = Truth::Conditional;
  v.certificate = what + " = 0 iff all listed coefficients vanish";
  return v;
}

Verdict sign_symbolic(const Form& f, bool want_nonneg, const SignProver& prover, const std::string& what) {
  Verdict v;
  const SymbolicSign s = symbolic_sign(f, prover);
  const ConditionSet& set = want_nonneg ? s.nonneg : s.nonpos;
  const bool decided = want_nonneg ? (s.tag == Sign::Zero || s.tag == Sign::Positive || s.tag == Sign::StrictlyPositive)
                                   : (s.tag == Sign::Zero || s.tag == Sign::Negative || s.tag == Sign::StrictlyNegative);
  SignVerdict sv;
  sv.tag = s.tag;
  v.sign = sv;
  v.conditions = set;
  const bool impossible = std::any_of(set.conditions.begin(), set.conditions.end(),
                                      [](const Condition& c) { return c.poly == Scalar(-1); });
  if (decided) {
    v.truth = Truth::True;
    v.certificate = what + ": " + to_string(s.tag) + " for every admissible assignment";
    v.conditions = {};
  } else if (impossible) {
    v.truth = Truth::False;
    v.certificate = what + ": fails for every admissible assignment (a coordinate pairing has fixed wrong sign)";
  } else if (set.sufficient_only && set.empty()) {
    v.truth = Truth::Unknown;
    v.note = "no block structure; use sampled mode";
  } else {
    v.truth = Truth::Conditional;
    v.certificate = what + (set.sufficient_only ? ": sufficient conditions listed" : ": iff all listed minors >= 0");
  }
  return v;
}

}  // namespace

ClassificationReport classify(const CurvaturePack& pack, const ClassifyOptions& opt) {
  const StructureSpec& s = pack.structure;
  const int n = pack.metric.n();
  std::vector<Parameter> params = all_params(s, pack.metric);
  const bool has_free = !params.empty();

  if (opt.mode == Mode::Numeric || (opt.mode == Mode::Symbolic && !has_free)) {
    if (has_free) {
      std::string names;
      for (const auto& p : params) names += (names.empty() ? "" : ", ") + p.name;
      throw MissingAssignment("numeric mode needs values for: " + names);
    }
    ClassificationReport r = classify_at(pack, {}, opt);
    r.mode = opt.mode;
    return r;
  }

  if (opt.mode == Mode::Sampled) {
    Rng rng(opt.seed);
    ClassificationReport agg;
    agg.label = s.label();
    agg.mode = Mode::Sampled;
    agg.n = n;
    agg.epsilon = opt.epsilon;
    std::vector<ClassificationReport> runs;
    for (int t = 0; t < opt.samples; ++t) {
      ClassifyOptions o = opt;
      o.seed = opt.seed + static_cast<std::uint64_t>(t) + 1;
      runs.push_back(classify_at(pack, sample_assignment(pack, {}, rng), o));
    }
    auto aggregate = [&](Verdict ClassificationReport::*field) {
      Verdict v;
      int fails = 0;
      for (const auto& run : runs) {
        const Verdict& x = run.*field;
        ++v.samples;
        if (x.truth == Truth::True) {
          ++v.holds;
          if (!v.witness) v.witness = run.values;
        } else if (x.truth == Truth::False) {
          ++fails;
          if (!v.counterexample) v.counterexample = run.values;
        }
      }
      if (v.holds == v.samples) v.truth = Truth::True;
      else if (fails == v.samples) v.truth = Truth::False;
      else if (v.holds > 0 && fails > 0) v.truth = Truth::Conditional;
      else v.truth = Truth::Unknown;
      v.certificate = "holds at " + std::to_string(v.holds) + " of " + std::to_string(v.samples) +
                      " sampled admissible assignments (seed " + std::to_string(opt.seed) + ")";
      return v;
    };
    agg.kahler = aggregate(&ClassificationReport::kahler);
    agg.pluriclosed = aggregate(&ClassificationReport::pluriclosed);
    agg.pluripositive = aggregate(&ClassificationReport::pluripositive);
    agg.plurinegative = aggregate(&ClassificationReport::plurinegative);
    agg.balanced = aggregate(&ClassificationReport::balanced);
    agg.gauduchon = aggregate(&ClassificationReport::gauduchon);
    agg.guan_li = aggregate(&ClassificationReport::guan_li);
    agg.plurineg_n = aggregate(&ClassificationReport::plurineg_n);
    agg.higher_dim = aggregate(&ClassificationReport::higher_dim);
    if (!opt.epsilon) agg.higher_dim.note = "no epsilon supplied";
    return agg;
  }

  // Symbolic.
  std::vector<Scalar> positive = pack.metric.positivity;
  const SignProver prover(params, positive, s.nonvanishing());
  ClassificationReport r;
  r.label = s.label();
  r.mode = Mode::Symbolic;
  r.n = n;
  r.epsilon = opt.epsilon;
  const Form& ddc1 = pack.curvature.ddc_power[0];
  r.kahler = vanishing_symbolic(pack.d_omega, params, positive, prover, "d omega");
  r.pluriclosed = vanishing_symbolic(ddc1, params, positive, prover, "dd^c omega");
  r.pluripositive = sign_symbolic(ddc1, true, prover, "dd^c omega >= 0");
  r.plurinegative = sign_symbolic(ddc1, false, prover, "dd^c omega <= 0");
  r.balanced = vanishing_symbolic(pack.d_omega_top, params, positive, prover, "d omega^" + std::to_string(n - 1));
  r.gauduchon = vanishing_symbolic(pack.curvature.ddc_power[n - 2], params, positive, prover,
                                   "dd^c omega^" + std::to_string(n - 1));
  {
    const Verdict t = vanishing_symbolic(pack.curvature.torsion, params, positive, prover, "d omega ^ d^c omega");
    r.guan_li.truth = conjunction({r.pluriclosed.truth, t.truth});
    r.guan_li.certificate = r.pluriclosed.certificate + "; " + t.certificate;
    r.guan_li.conditions = r.pluriclosed.conditions;
    for (const auto& c : t.conditions.conditions) r.guan_li.conditions.conditions.push_back(c);
  }
  {
    std::vector<Truth> parts{r.gauduchon.truth};
    r.plurineg_n.conditions = r.gauduchon.conditions;
    for (std::size_t ell = 0; ell < pack.plurineg.size(); ++ell) {
      Verdict part = sign_symbolic(pack.plurineg[ell], false, prover, "S_" + std::to_string(ell) + " <= 0");
      parts.push_back(part.truth);
      for (const auto& c : part.conditions.conditions) r.plurineg_n.conditions.conditions.push_back(c);
      r.plurineg_parts.push_back(std::move(part));
    }
    r.plurineg_n.truth = conjunction(parts);
    r.plurineg_n.certificate = "Gauduchon and S_l <= 0 for l = 0.." + std::to_string(n - 3);
  }
  if (opt.epsilon && n >= 3) {
    std::vector<Truth> parts;
    Verdict first = sign_symbolic(ddc1, true, prover, "dd^c omega >= 0");
    parts.push_back(first.truth);
    r.higher_dim.conditions = first.conditions;
    for (int q = 2; q <= n - 2; ++q) {
      const Form f = s.reduce(pack.curvature.ddc_power[q - 1] -
                              pack.omega_ddc[q - 2] * Scalar(GaussianRational(*opt.epsilon)));
      Verdict part = sign_symbolic(f, true, prover, "q = " + std::to_string(q));
      parts.push_back(part.truth);
      for (const auto& c : part.conditions.conditions) r.higher_dim.conditions.conditions.push_back(c);
    }
    r.higher_dim.truth = conjunction(parts);
    r.higher_dim.certificate = "eps = " + to_string(*opt.epsilon);
  } else {
    r.higher_dim.truth = Truth::Unknown;
    r.higher_dim.note = n >= 3 ? "no epsilon supplied" : "needs n >= 3";
  }
  return r;
}

ClassificationReport classify(const StructureSpec& s, const MetricSpec& m, const ClassifyOptions& opt) {
  return classify(curvature_pack(s, m), opt);
}

}  // namespace plurisign
