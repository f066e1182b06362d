#include "plurisign/catalog.hpp"

#include <map>
#include <set>
#include <sstream>

#include "plurisign/expr.hpp"

namespace plurisign {

using nlohmann::json;

const std::vector<AlgebraDocument>& catalog() {
  static const std::vector<AlgebraDocument> docs = [] {
    std::vector<AlgebraDocument> out;
    const json doc = json::parse(catalog_resource());
    for (const auto& f : doc.at("families")) out.push_back(parse_algebra(f));
    return out;
  }();
  return docs;
}

std::vector<std::string> family_ids() {
  std::vector<std::string> out;
  for (const auto& d : catalog()) out.push_back(d.id);
  return out;
}

const AlgebraDocument& family(const std::string& id) {
  for (const auto& d : catalog()) {
    if (d.id == id) return d;
  }
  throw UnknownFamily("unknown family '" + id + "'");
}

StructureSpec instantiate_family(const std::string& id, const Assignment& choices) {
  const AlgebraDocument& doc = family(id);
  StructureSpec s = choices.empty() ? doc.spec : doc.spec.specialize(choices);
  const StructureReport r = check_structure(s);
  if (!r.ok()) throw std::runtime_error("family " + id + " fails structural checks: " + r.violations.front());
  return s;
}

MetricSpec family_metric(const AlgebraDocument& doc, const std::string& kind) {
  const std::string k = kind == "default" ? doc.default_metric : kind;
  const int n = doc.spec.n();
  if (k == "generic") return generic_metric(n, false);
  if (k == "diagonal") return generic_metric(n, true);
  if (k == "standard") return standard_metric(n);
  throw std::invalid_argument("unknown metric kind '" + kind + "'");
}

MetricSpec resolve_metric(const AlgebraDocument& doc, const std::string& text) {
  std::string kind = "default";
  std::string values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.find('=') == std::string::npos) {
      kind = item;
    } else {
      values += (values.empty() ? "" : ",") + item;
    }
  }
  return specialize(family_metric(doc, kind), parse_assignment(values));
}

std::vector<LedgerEntry> parse_ledger(const json& doc) {
  std::vector<LedgerEntry> out;
  for (const auto& e : doc.at("entries")) {
    LedgerEntry x;
    x.family = e.at("family").get<std::string>();
    if (e.contains("discrete")) {
      for (const auto& [k, v] : e.at("discrete").items()) x.discrete[k] = parse_gaussian(v.get<std::string>());
    }
    x.citation = e.value("citation", std::string());
    x.claims = e.at("claims");
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<LedgerEntry> expected_ledger() { return parse_ledger(json::parse(ledger_resource())); }

// ---------------------------------------------------------------------------
// Replay

namespace {

Assignment assignment_of(const json& j) {
  Assignment a;
  if (j.is_null()) return a;
  for (const auto& [k, v] : j.items()) a[k] = parse_gaussian(v.is_string() ? v.get<std::string>() : v.dump());
  return a;
}

Verdict ClassificationReport::*field_of(const std::string& name) {
  static const std::map<std::string, Verdict ClassificationReport::*> fields = {
      {"kahler", &ClassificationReport::kahler},
      {"pluriclosed", &ClassificationReport::pluriclosed},
      {"pluripositive", &ClassificationReport::pluripositive},
      {"plurinegative", &ClassificationReport::plurinegative},
      {"balanced", &ClassificationReport::balanced},
      {"gauduchon", &ClassificationReport::gauduchon},
      {"guan_li", &ClassificationReport::guan_li},
      {"plurineg_n", &ClassificationReport::plurineg_n},
      {"higher_dim", &ClassificationReport::higher_dim}};
  auto it = fields.find(name);
  if (it == fields.end()) throw std::invalid_argument("unknown property '" + name + "'");
  return it->second;
}

struct Setup {
  StructureSpec structure;
  MetricSpec metric;
  CurvaturePack pack;
};

Setup build(const StructureSpec& s, const AlgebraDocument& doc, const json& claim, const Assignment& extra = {}) {
  Assignment fixed = assignment_of(claim.value("fixed", json()));
  for (const auto& [k, v] : extra) fixed[k] = v;
  Assignment sfix;
  Assignment mfix;
  for (const auto& [k, v] : fixed) (s.find_param(k) ? sfix : mfix)[k] = v;
  Setup out;
  out.structure = sfix.empty() ? s : s.specialize(sfix);
  out.metric = specialize(family_metric(doc, claim.value("metric", std::string("default"))), mfix);
  out.pack = curvature_pack(out.structure, out.metric);
  return out;
}

std::vector<Parameter> params_of(const Setup& x) {
  std::vector<Parameter> p = x.structure.params();
  p.insert(p.end(), x.metric.params.begin(), x.metric.params.end());
  return p;
}

Form expected_form(const json& terms, int n, const std::vector<Parameter>& params) {
  Form out(n);
  for (const auto& t : terms) {
    Form w = Form::constant(n, parse_expression(t.at("coeff").get<std::string>(), params));
    for (const auto& f : t.at("wedge")) {
      std::string code = f.get<std::string>();
      Scalar unit(1);
      if (!code.empty() && code[0] == 'i') {
        unit = Scalar::i();
        code.erase(code.begin());
      }
      const BasisMonomial m = parse_monomial(code, n);
      w = wedge(w, Form::monomial(n, m, unit));
    }
    out += w;
  }
  return out;
}

Form at(const Form& f, const Assignment& a) {
  return f.map_coefficients([&](const Scalar& c) { return Scalar(instantiate(c, a)); });
}

std::string set_str(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "; " : "") + x;
  return out + "}";
}

std::set<std::string> normalized(const std::vector<Scalar>& polys, const std::vector<Parameter>& params,
                                 const std::vector<Scalar>& positive) {
  std::set<std::string> out;
  for (const auto& p : polys) {
    for (const auto& eq : real_equations(p, params, positive)) out.insert(render(eq));
  }
  return out;
}

Form sign_form(const CurvaturePack& pack, const json& claim, const std::optional<Rational>& eps) {
  const std::string form = claim.value("form", std::string("ddc"));
  if (form == "ddc") return pack.curvature.ddc_power.at(static_cast<std::size_t>(claim.value("power", 1) - 1));
  if (form == "ddc_minus_eps") {
    return pack.structure.reduce(pack.curvature.ddc_power.at(1) - pack.omega_ddc.at(0) * Scalar(GaussianRational(*eps)));
  }
  throw std::invalid_argument("unknown form '" + form + "'");
}

bool sign_matches(const SignVerdict& v, const std::string& expect) {
  if (expect == "indefinite") return v.tag == Sign::Indefinite && v.positive && v.negative;
  if (expect == "not_nonneg") return v.not_nonneg();
  if (expect == "nonneg") return v.nonneg();
  if (expect == "nonpos") return v.nonpos();
  if (expect == "zero") return v.tag == Sign::Zero;
  throw std::invalid_argument("unknown sign expectation '" + expect + "'");
}

void run_claim(const LedgerEntry& e, const json& claim, const ReplayOptions& opt, ClaimOutcome& out) {
  const AlgebraDocument& doc = family(e.family);
  const StructureSpec s = instantiate_family(e.family, e.discrete);
  const std::string check = claim.at("check").get<std::string>();
  out.check = check;
  out.property = claim.value("property", std::string());
  ClassifyOptions co;
  co.seed = claim.value("seed", opt.seed);
  co.directions = opt.directions;

  if (check == "structure") {
    const StructureReport r = check_structure(s);
    out.expected = "integrable, d^2 = 0, unimodular";
    out.ok = r.ok();
    out.actual = r.ok() ? out.expected : r.violations.front();
    return;
  }
  if (check == "ddc_equals") {
    const Setup x = build(s, doc, claim);
    const int k = claim.value("power", 1);
    out.property = "dd^c omega^" + std::to_string(k);
    const Form want = x.structure.reduce(expected_form(claim.at("expected"), s.n(), params_of(x)));
    const Form& got = x.pack.curvature.ddc_power.at(static_cast<std::size_t>(k - 1));
    out.expected = render(want, FormStyle::Shorthand);
    out.actual = render(got, FormStyle::Shorthand);
    out.ok = want == got;
    const int points = claim.value("points", 0);
    Rng rng(co.seed);
    for (int t = 0; t < points && out.ok; ++t) {
      const Assignment a = sample_assignment(x.pack, {}, rng);
      if (!(at(want, a) == at(got, a))) {
        out.ok = false;
        out.actual += " (differs at " + to_string(a) + ")";
      }
    }
    if (out.ok && points > 0) out.actual += " (also equal at " + std::to_string(points) + " sampled points)";
    return;
  }
  if (check == "condition_equals") {
    const Setup x = build(s, doc, claim);
    const auto params = params_of(x);
    std::vector<Scalar> want;
    for (const auto& p : claim.at("expected")) want.push_back(parse_expression(p.get<std::string>(), params));
    std::vector<Scalar> got;
    if (out.property == "balanced") {
      for (const auto& c : balanced_condition(x.structure, x.metric).conditions) got.push_back(c.poly);
    } else if (out.property == "pluriclosed") {
      for (const auto& [m, c] : x.pack.curvature.ddc_power[0].terms()) got.push_back(c);
    } else {
      throw std::invalid_argument("condition_equals supports balanced and pluriclosed");
    }
    const auto a = normalized(want, params, x.metric.positivity);
    const auto b = normalized(got, params, x.metric.positivity);
    out.expected = set_str(a);
    out.actual = set_str(b);
    out.ok = a == b;
    return;
  }
  if (check == "symbolic" || check == "never_zero") {
    const Setup x = build(s, doc, claim);
    co.mode = Mode::Symbolic;
    const ClassificationReport r = classify(x.pack, co);
    if (check == "never_zero") {
      out.property = "pluriclosed";
      out.expected = "dd^c omega != 0 for every admissible metric";
      out.ok = r.pluriclosed.truth == Truth::False;
      out.actual = to_string(r.pluriclosed.truth) + ": " + r.pluriclosed.certificate;
    } else {
      const Verdict& v = r.*field_of(out.property);
      out.expected = claim.at("expect").get<std::string>();
      out.actual = to_string(v.truth);
      out.ok = out.actual == out.expected;
    }
    return;
  }
  if (check == "sampled") {
    const Setup x = build(s, doc, claim);
    co.mode = Mode::Sampled;
    co.samples = claim.value("samples", 200);
    const ClassificationReport r = classify(x.pack, co);
    const Verdict& v = r.*field_of(out.property);
    const std::string expect = claim.at("expect").get<std::string>();
    out.expected = expect + " of " + std::to_string(co.samples);
    out.actual = std::to_string(v.holds) + " of " + std::to_string(v.samples) + " (" + to_string(v.truth) + ")";
    if (expect == "all") out.ok = v.truth == Truth::True;
    else if (expect == "none") out.ok = v.truth == Truth::False;
    else if (expect == "some") out.ok = v.holds > 0;
    else throw std::invalid_argument("sampled expect must be all, none or some");
    return;
  }
  if (check == "point") {
    const Setup x = build(s, doc, claim, assignment_of(claim.at("values")));
    const ClassificationReport r = classify_at(x.pack, {}, co);
    const Verdict& v = r.*field_of(out.property);
    const bool expect = claim.at("expect").get<bool>();
    out.expected = expect ? "true" : "false";
    out.actual = to_string(v.truth);
    out.ok = v.truth == (expect ? Truth::True : Truth::False);
    return;
  }
  if (check == "higher_dim") {
    const Setup x = build(s, doc, claim, assignment_of(claim.at("values")));
    const Rational eps = parse_rational(claim.at("eps").get<std::string>());
    const Verdict v = higher_dim_condition(x.pack, {}, eps, co);
    const bool expect = claim.at("expect").get<bool>();
    out.property = "higher_dim";
    out.expected = std::string(expect ? "true" : "false") + " at eps = " + to_string(eps);
    out.actual = to_string(v.truth);
    out.ok = v.truth == (expect ? Truth::True : Truth::False);
    return;
  }
  if (check == "sup_epsilon") {
    const Setup x = build(s, doc, claim, assignment_of(claim.at("values")));
    const EpsilonBound b = epsilon_bound(x.pack, {}, co);
    out.property = "higher_dim";
    out.expected = "sup eps = " + claim.at("expected").get<std::string>() + " (exact)";
    out.actual = b.sup ? "sup eps = " + to_string(*b.sup) : "unbounded";
    out.actual += b.exact ? " (exact)" : " (bisection)";
    out.ok = b.feasible && b.exact && b.sup && *b.sup == parse_rational(claim.at("expected").get<std::string>());
    return;
  }
  if (check == "sign") {
    const std::string expect = claim.at("expect").get<std::string>();
    std::vector<std::optional<Rational>> grid;
    if (claim.contains("eps_grid")) {
      for (const auto& g : claim.at("eps_grid")) grid.emplace_back(parse_rational(g.get<std::string>()));
    } else {
      grid.emplace_back(std::nullopt);
    }
    out.property = claim.value("form", std::string("ddc"));
    out.expected = expect;
    out.ok = true;
    int tested = 0;
    for (const auto& pt : claim.at("points")) {
      const Setup x = build(s, doc, claim, assignment_of(pt));
      for (const auto& eps : grid) {
        const SignVerdict v = sign_of_form(sign_form(x.pack, claim, eps), {co.directions, co.seed});
        ++tested;
        if (!sign_matches(v, expect)) {
          out.ok = false;
          out.actual = to_string(v.tag) + " at " + to_string(assignment_of(pt)) +
                       (eps ? ", eps = " + to_string(*eps) : std::string());
          return;
        }
      }
    }
    out.actual = expect + " in all " + std::to_string(tested) + " cases";
    return;
  }
  if (check == "parallel") {
    const std::string expect = claim.at("expect").get<std::string>();
    const auto certs = proposition_parallel_check(s);
    bool all_zero = true;
    bool all_cert = true;
    for (const auto& c : certs) {
      all_zero = all_zero && c.zero;
      all_cert = all_cert && c.certified;
    }
    out.property = "dd^c omega^k >= 0";
    out.expected = expect;
    out.actual = all_zero ? "zero" : (all_cert ? "certified" : "not certified");
    out.ok = out.actual == expect;
    return;
  }
  throw std::invalid_argument("unknown check '" + check + "'");
}

}  // namespace

std::vector<ClaimOutcome> replay_ledger(const std::vector<LedgerEntry>& entries, const ReplayOptions& opt) {
  std::vector<ClaimOutcome> out;
  for (const auto& e : entries) {
    if (!opt.family.empty() && e.family != opt.family) continue;
    for (const auto& claim : e.claims) {
      ClaimOutcome o;
      o.family = e.family;
      o.discrete = to_string(e.discrete);
      o.citation = claim.value("citation", e.citation);
      try {
        run_claim(e, claim, opt, o);
      } catch (const std::exception& ex) {
        o.ok = false;
        o.actual = std::string("error: ") + ex.what();
        if (o.check.empty()) o.check = claim.value("check", std::string("?"));
      }
      out.push_back(std::move(o));
    }
  }
  return out;
}

std::string replay_markdown(const std::vector<ClaimOutcome>& outcomes) {
  std::ostringstream os;
  int bad = 0;
  std::set<std::string> fams;
  for (const auto& o : outcomes) {
    bad += o.ok ? 0 : 1;
    fams.insert(o.family);
  }
  os << "# Ledger replay\n\n" << outcomes.size() << " claims over " << fams.size() << " families, " << bad
     << " mismatches.\n\n";
  os << "| family | choices | check | property | expected | actual | result | claim |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  auto cell = [](std::string s) {
    for (auto& c : s) {
      if (c == '|') c = '/';
      if (c == '\n') c = ' ';
    }
    return s;
  };
  for (const auto& o : outcomes) {
    os << "| " << o.family << " | " << cell(o.discrete) << " | " << o.check << " | " << cell(o.property) << " | "
       << cell(o.expected) << " | " << cell(o.actual) << " | " << (o.ok ? "ok" : "MISMATCH") << " | "
       << cell(o.citation) << " |\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<ParallelCertificate> proposition_parallel_check(const StructureSpec& s) {
  const int n = s.n();
  for (int j = 1; j <= n; ++j) {
    if (!(s.d_phi(j).component(2, 0) == s.d_phi(j))) {
      throw std::invalid_argument("structure is not complex parallelizable: d(phi^" + std::to_string(j) +
                                  ") has a (1,1) part");
    }
  }
  const MetricSpec m = standard_metric(n);
  std::vector<ParallelCertificate> out;
  for (int k = 1; k < n; ++k) {
    ParallelCertificate c;
    c.k = k;
    const Form wk = s.reduce(power(m.omega, k));
    const Form total = ddc(s, wk);
    if (total.is_zero()) {
      c.zero = true;
      c.certified = true;
      c.detail = "dd^c omega^" + std::to_string(k) + " = 0";
      out.push_back(c);
      continue;
    }
    const GaussianRational unit = GaussianRational::i_power(static_cast<long>((k + 1) * (k + 1)));
    Form sum(n);
    int blocks = 0;
    bool ok = true;
    for (const auto& [mono, coeff] : wk.terms()) {
      const Form t = ddc(s, Form::monomial(n, mono, coeff));
      if (t.is_zero()) continue;
      const Form beta = differential(s, Form::monomial(n, {mono.holo, 0}));
      const Form b = s.reduce(wedge(beta, beta.conj()) * Scalar(unit));
      if (b.is_zero()) {
        ok = false;
        break;
      }
      const auto& [m0, c0] = *b.terms().begin();
      const Scalar tc = t.coefficient(m0);
      const auto& [bm, bc] = *c0.terms().begin();
      auto it = tc.terms().find(bm);
      if (it == tc.terms().end()) {
        ok = false;
        break;
      }
      const GaussianRational lambda = it->second / bc;
      if (!lambda.is_real() || sgn(lambda.re()) < 0 || !(b * Scalar(lambda) == t)) {
        ok = false;
        break;
      }
      sum += t;
      ++blocks;
    }
    c.certified = ok && sum == total;
    c.detail = c.certified ? "dd^c omega^" + std::to_string(k) + " = sum of " + std::to_string(blocks) +
                                 " nonnegative multiples of i^" + std::to_string((k + 1) * (k + 1)) +
                                 " beta ^ conj(beta), beta = del(phi^J)"
                           : "no sum-of-squares decomposition over del(phi^J)";
    out.push_back(c);
  }
  return out;
}

}  // namespace plurisign
