#include "plurisign/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace plurisign {

// ---------------------------------------------------------------------------
// Monomial

Indeterminate Indeterminate::conj() const {
  if (kind == ParamKind::Real) return *this;
  return {name, kind, !bar};
}

Monomial::Monomial(Indeterminate x, unsigned exponent) {
  if (x.kind == ParamKind::Real) x.bar = false;
  if (exponent > 0) factors_.emplace_back(std::move(x), exponent);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::exponent(const Indeterminate& x) const {
  for (const auto& [y, e] : factors_) {
    if (y.name == x.name && y.bar == x.bar) return e;
  }
  return 0;
}

Monomial Monomial::conj() const {
  Monomial r;
  r.factors_.reserve(factors_.size());
  for (const auto& [x, e] : factors_) r.factors_.emplace_back(x.conj(), e);
  std::sort(r.factors_.begin(), r.factors_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  return r;
}

namespace {

void check_kinds(const std::vector<Monomial::Factor>& fs) {
  for (std::size_t k = 1; k < fs.size(); ++k) {
    const auto& a = fs[k - 1].first;
    const auto& b = fs[k].first;
    if (a.name == b.name && a.kind != b.kind) {
      throw ParameterMismatch("parameter '" + a.name + "' used both as real and complex");
    }
  }
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto& out = r.factors_;
  out.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.push_back(*j++);
    } else {
      if (i->first.kind != j->first.kind) {
        throw ParameterMismatch("parameter '" + i->first.name + "' used both as real and complex");
      }
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.factors_.end());
  out.insert(out.end(), j, b.factors_.end());
  check_kinds(out);
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [x, e] : factors_) {
    if (other.exponent(x) < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r;
  for (const auto& [x, e] : other.factors_) {
    const unsigned d = e - exponent(x);
    if (d > 0) r.factors_.emplace_back(x, d);
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& other) const {
  Monomial r;
  for (const auto& [x, e] : factors_) {
    const unsigned d = std::min(e, other.exponent(x));
    if (d > 0) r.factors_.emplace_back(x, d);
  }
  return r;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    const auto& x = fa[i].first;
    const auto& y = fb[j].first;
    if (x < y) return false;  // a carries an earlier variable
    if (y < x) return true;
    if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second;
    ++i;
    ++j;
  }
  return i == fa.size() && j < fb.size();
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(GaussianRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), std::move(c));
}

Scalar::Scalar(const Monomial& m, GaussianRational c) {
  if (!c.is_zero()) terms_.emplace(m, std::move(c));
}

bool Scalar::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

GaussianRational Scalar::constant() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? GaussianRational() : it->second;
}

unsigned Scalar::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

std::vector<Indeterminate> Scalar::indeterminates() const {
  std::vector<Indeterminate> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [x, e] : m.factors()) {
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Scalar::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar Scalar::conj() const {
  Scalar r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m.conj(), c.conj());
  return r;
}

bool Scalar::is_real() const { return conj() == *this; }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Scalar Scalar::pow(unsigned k) const {
  Scalar r(1);
  Scalar base = *this;
  while (k > 0) {
    if (k & 1U) r *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return r;
}

std::string Scalar::str() const { return render(*this, Style::Plain); }

// ---------------------------------------------------------------------------
// Constraints and parameters

std::string Constraint::str() const {
  switch (kind) {
    case Kind::Positive: return "positive";
    case Kind::Nonneg: return "nonneg";
    case Kind::Binary: return "binary";
    case Kind::Sign: return "sign";
    case Kind::UnitModulus: return "unit_modulus";
    case Kind::NotUnitModulus: return "not_unit_modulus";
    case Kind::ImNonneg: return "im_nonneg";
    case Kind::Interval: return "interval[" + lo.get_str() + "," + hi.get_str() + "]";
    case Kind::Excluded: {
      std::string s = "excluded{";
      for (std::size_t k = 0; k < values.size(); ++k) s += (k ? "," : "") + values[k].str();
      return s + "}";
    }
    case Kind::Reciprocal: return "reciprocal(" + factor.get_str() + "/" + other + ")";
  }
  return "?";
}

std::optional<std::string> Constraint::violated_by(const std::string& name, const GaussianRational& v,
                                                   const std::map<std::string, GaussianRational>& all) const {
  auto fail = [&](const std::string& what) { return std::optional<std::string>(name + " = " + v.str() + " violates " + what); };
  switch (kind) {
    case Kind::Positive:
      if (!v.is_real() || sgn(v.re()) <= 0) return fail("positive");
      break;
    case Kind::Nonneg:
      if (!v.is_real() || sgn(v.re()) < 0) return fail("nonneg");
      break;
    case Kind::Binary:
      if (!(v == GaussianRational(0) || v == GaussianRational(1))) return fail("binary");
      break;
    case Kind::Sign:
      if (!(v == GaussianRational(1) || v == GaussianRational(-1))) return fail("sign");
      break;
    case Kind::UnitModulus:
      if (v.norm() != 1) return fail("unit_modulus");
      break;
    case Kind::NotUnitModulus:
      if (v.norm() == 1) return fail("not_unit_modulus");
      break;
    case Kind::ImNonneg:
      if (sgn(v.im()) < 0) return fail("im_nonneg");
      break;
    case Kind::Interval:
      if (!v.is_real() || v.re() < lo || v.re() > hi) return fail(str());
      break;
    case Kind::Excluded:
      if (std::find(values.begin(), values.end(), v) != values.end()) return fail(str());
      break;
    case Kind::Reciprocal: {
      auto it = all.find(other);
      if (it != all.end() && !(v * it->second == GaussianRational(factor))) return fail(str());
      break;
    }
  }
  return std::nullopt;
}

bool Parameter::has(Constraint::Kind k) const {
  return std::any_of(constraints.begin(), constraints.end(), [k](const Constraint& c) { return c.kind == k; });
}

std::string Parameter::signature() const {
  using K = Constraint::Kind;
  std::string s = name;
  if (has(K::Binary)) return s + "∈{0,1}";
  if (has(K::Sign)) return s + "∈{-1,1}";
  if (kind == ParamKind::Complex) {
    s += "∈ℂ";
    if (has(K::UnitModulus)) s += ", |" + name + "|=1";
    if (has(K::NotUnitModulus)) s += ", |" + name + "|≠1";
    if (has(K::ImNonneg)) s += ", Im " + name + "≥0";
    return s;
  }
  if (has(K::Positive)) {
    s += "∈ℝ>0";
  } else if (has(K::Nonneg)) {
    s += "∈ℝ≥0";
  } else {
    s += "∈ℝ";
  }
  for (const auto& c : constraints) {
    if (c.kind == K::Excluded) s += " \\ {" + c.str().substr(9);
    if (c.kind == K::Interval) s += ", " + c.str();
    if (c.kind == K::Reciprocal) s += ", " + name + "=(" + c.factor.get_str() + ")/" + c.other;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Rewriting

RuleSet::RuleSet(std::vector<RewriteRule> rules) {
  GrlexLess less;
  auto add = [&](RewriteRule r) {
    for (const auto& [m, c] : r.rhs.terms()) {
      if (!less(m, r.lhs)) {
        throw NonTerminatingRules("rewrite rule " + render(Scalar(r.lhs, 1)) + " -> " + render(r.rhs) +
                                  " does not decrease the monomial order");
      }
    }
    for (const auto& existing : rules_) {
      if (existing.lhs == r.lhs) {
        if (!(existing.rhs == r.rhs)) throw NonTerminatingRules("conflicting rules for " + render(Scalar(r.lhs, 1)));
        return;
      }
    }
    rules_.push_back(std::move(r));
  };
  for (auto& r : rules) {
    RewriteRule c{r.lhs.conj(), r.rhs.conj()};
    add(std::move(r));
    add(std::move(c));
  }
}

Scalar RuleSet::reduce(const Scalar& a) const {
  if (rules_.empty()) return a;
  Scalar current = a;
  for (;;) {
    bool changed = false;
    Scalar next;
    for (const auto& [m, c] : current.terms()) {
      const RewriteRule* hit = nullptr;
      for (const auto& r : rules_) {
        if (r.lhs.divides(m)) {
          hit = &r;
          break;
        }
      }
      if (hit == nullptr) {
        next.add_term(m, c);
        continue;
      }
      changed = true;
      const Monomial q = hit->lhs.quotient_of(m);
      for (const auto& [rm, rc] : hit->rhs.terms()) next.add_term(rm * q, rc * c);
    }
    current = std::move(next);
    if (!changed) return current;
  }
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

const GaussianRational& lookup(const Assignment& values, const Indeterminate& x) {
  auto it = values.find(x.name);
  if (it == values.end()) throw MissingAssignment("no value assigned to parameter '" + x.name + "'");
  return it->second;
}

}  // namespace

GaussianRational instantiate(const Scalar& a, const Assignment& values) {
  GaussianRational total;
  for (const auto& [m, c] : a.terms()) {
    GaussianRational t = c;
    for (const auto& [x, e] : m.factors()) {
      GaussianRational v = lookup(values, x);
      if (x.bar) v = v.conj();
      for (unsigned k = 0; k < e; ++k) t *= v;
    }
    total += t;
  }
  return total;
}

Scalar instantiate_partial(const Scalar& a, const Assignment& values) {
  Scalar total;
  for (const auto& [m, c] : a.terms()) {
    GaussianRational t = c;
    Monomial rest;
    for (const auto& [x, e] : m.factors()) {
      auto it = values.find(x.name);
      if (it == values.end()) {
        rest = rest * Monomial(x, e);
        continue;
      }
      const GaussianRational v = x.bar ? it->second.conj() : it->second;
      for (unsigned k = 0; k < e; ++k) t *= v;
    }
    total.add_term(rest, t);
  }
  return total;
}

Scalar substitute(const Scalar& a, const std::map<std::string, Scalar>& replacement) {
  Scalar total;
  for (const auto& [m, c] : a.terms()) {
    Scalar t(c);
    for (const auto& [x, e] : m.factors()) {
      auto it = replacement.find(x.name);
      if (it == replacement.end()) {
        t *= Scalar(Monomial(x, e), 1);
      } else {
        t *= (x.bar ? it->second.conj() : it->second).pow(e);
      }
    }
    total += t;
  }
  return total;
}

std::vector<std::string> constraint_violations(const std::vector<Parameter>& params, const Assignment& values) {
  std::vector<std::string> out;
  for (const auto& p : params) {
    auto it = values.find(p.name);
    if (it == values.end()) continue;
    if (p.kind == ParamKind::Real && !it->second.is_real()) {
      out.push_back(p.name + " = " + it->second.str() + " is not real");
    }
    for (const auto& c : p.constraints) {
      if (auto v = c.violated_by(p.name, it->second, values)) out.push_back(*v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string latex_name(const std::string& name) {
  static const std::set<std::string> greek = {"alpha", "beta", "gamma", "delta", "epsilon", "lambda",
                                              "mu",    "rho",  "sigma", "theta", "tau"};
  if (greek.count(name)) return "\\" + name;
  // r2 -> r^2 for the squared metric coefficients
  if (name.size() == 2 && std::isalpha(static_cast<unsigned char>(name[0])) && name[1] == '2') {
    return std::string(1, name[0]) + "^{2}";
  }
  return name;
}

std::string plain_indet(const Indeterminate& x, Style style) {
  if (style == Style::Latex) return x.bar ? "\\overline{" + latex_name(x.name) + "}" : latex_name(x.name);
  return x.bar ? "conj(" + x.name + ")" : x.name;
}

std::string power(const std::string& base, unsigned e, Style style) {
  if (e == 1) return base;
  if (style == Style::Latex) return base + "^{" + std::to_string(e) + "}";
  return base + "^" + std::to_string(e);
}

std::string join_factors(const std::vector<std::string>& parts, Style style) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += style == Style::Latex ? " " : "*";
    s += p;
  }
  return s;
}

std::string render_monomial(const Monomial& m, Style style) {
  std::vector<std::string> parts;
  if (style == Style::Plain) {
    for (const auto& [x, e] : m.factors()) parts.push_back(power(plain_indet(x, style), e, style));
    return join_factors(parts, style);
  }
  // Pretty / Latex: group p^a conj(p)^b into |p|^(2 min) and a remainder.
  const auto& fs = m.factors();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto& [x, e] = fs[k];
    if (x.kind == ParamKind::Complex && !x.bar) {
      const unsigned f = m.exponent(x.conj());
      const unsigned both = std::min(e, f);
      if (both > 0) {
        const std::string abs = style == Style::Latex ? "|" + latex_name(x.name) + "|" : "|" + x.name + "|";
        parts.push_back(power(abs, 2 * both, style));
      }
      if (e > both) parts.push_back(power(plain_indet(x, style), e - both, style));
      if (f > both) parts.push_back(power(plain_indet(x.conj(), style), f - both, style));
    } else if (x.kind == ParamKind::Complex && x.bar) {
      if (m.exponent(x.conj()) == 0) parts.push_back(power(plain_indet(x, style), e, style));
    } else {
      parts.push_back(power(plain_indet(x, style), e, style));
    }
  }
  return join_factors(parts, style);
}

std::string rational_text(const Rational& q, Style style) {
  if (style == Style::Latex && q.get_den() != 1) {
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
  }
  return q.get_str();
}

/// Renders c * body with a leading sign separated out. Returns {negative, text}.
std::pair<bool, std::string> signed_term(const GaussianRational& c, const std::string& body, Style style) {
  const std::string mul = style == Style::Latex ? " " : "*";
  const std::string unit = style == Style::Latex ? "\\sqrt{-1}" : "i";
  auto with_body = [&](std::string coef) {
    if (body.empty()) return coef.empty() ? std::string("1") : coef;
    return coef.empty() ? body : coef + mul + body;
  };
  if (c.is_real()) {
    const bool neg = sgn(c.re()) < 0;
    const Rational a = neg ? Rational(-c.re()) : c.re();
    return {neg, with_body(a == 1 && !body.empty() ? "" : rational_text(a, style))};
  }
  if (c.is_imaginary()) {
    const bool neg = sgn(c.im()) < 0;
    const Rational a = neg ? Rational(-c.im()) : c.im();
    return {neg, with_body(a == 1 ? unit : rational_text(a, style) + mul + unit)};
  }
  std::string coef = "(" + rational_text(c.re(), style) + (sgn(c.im()) < 0 ? "-" : "+");
  const Rational b = sgn(c.im()) < 0 ? Rational(-c.im()) : c.im();
  coef += (b == 1 ? unit : rational_text(b, style) + mul + unit) + ")";
  return {false, with_body(coef)};
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [neg, text] = terms[k];
    if (k == 0) {
      s += neg ? "-" + text : text;
    } else {
      s += neg ? " - " : " + ";
      s += text;
    }
  }
  return s;
}

std::string render_sum(const Scalar& a, Style style) {
  std::vector<std::pair<bool, std::string>> out;
  if (style == Style::Plain) {
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
      out.push_back(signed_term(it->second, render_monomial(it->first, style), style));
    }
    return join_terms(out);
  }
  std::set<Monomial, GrlexLess> done;
  const std::string re = style == Style::Latex ? "\\Re" : "Re";
  const std::string im = style == Style::Latex ? "\\Im" : "Im";
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (done.count(m)) continue;
    done.insert(m);
    const Monomial mc = m.conj();
    auto partner = a.terms().find(mc);
    if (!(mc == m) && partner != a.terms().end() && partner->second == c.conj() && (c.is_real() || c.is_imaginary())) {
      done.insert(mc);
      const std::string body = render_monomial(m, style);
      const std::string wrapped = style == Style::Latex ? re + "(" + body + ")" : re + "(" + body + ")";
      if (c.is_real()) {
        out.push_back(signed_term(GaussianRational(c.re() * 2), wrapped, style));
      } else {
        // i b (m - conj m) = -2 b Im(m)
        out.push_back(signed_term(GaussianRational(-c.im() * 2), im + "(" + body + ")", style));
      }
      continue;
    }
    out.push_back(signed_term(c, render_monomial(m, style), style));
  }
  return join_terms(out);
}

Rational rational_gcd_content(const Scalar& a, bool imaginary) {
  mpz_class num = 0;
  mpz_class den = 1;
  for (const auto& [m, c] : a.terms()) {
    const Rational& q = imaginary ? c.im() : c.re();
    mpz_class n = abs(q.get_num());
    num = gcd(num, n);
    den = lcm(den, q.get_den());
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Factored factor_content(const Scalar& a) {
  Factored f;
  if (a.is_zero()) return f;
  bool all_real = true;
  bool all_imag = true;
  std::optional<Monomial> common;
  for (const auto& [m, c] : a.terms()) {
    all_real = all_real && c.is_real();
    all_imag = all_imag && c.is_imaginary();
    common = common ? common->gcd(m) : m;
  }
  f.common = *common;
  GaussianRational content(1);
  if (all_real || all_imag) {
    Rational g = rational_gcd_content(a, !all_real);
    const auto& lead = a.terms().rbegin()->second;
    const bool neg = all_real ? sgn(lead.re()) < 0 : sgn(lead.im()) < 0;
    if (neg) g = -g;
    content = all_real ? GaussianRational(g) : GaussianRational(Rational(0), g);
  }
  f.content = content;
  const GaussianRational inv = content.inverse();
  for (const auto& [m, c] : a.terms()) f.rest.add_term(f.common.quotient_of(m), c * inv);
  return f;
}

std::string render(const Scalar& a, Style style) {
  if (style == Style::Plain || a.terms().size() <= 1) {
    if (a.is_zero()) return "0";
    return render_sum(a, style);
  }
  const Factored f = factor_content(a);
  const std::string rest = render_sum(f.rest, style);
  const std::string common = render_monomial(f.common, style);
  const bool trivial = f.content == GaussianRational(1) && f.common.is_one();
  if (trivial) return rest;
  const std::string mul = style == Style::Latex ? " " : "*";
  std::string body = common.empty() ? "(" + rest + ")" : common + mul + "(" + rest + ")";
  if (f.content == GaussianRational(1)) return body;
  if (f.content == GaussianRational(-1)) return "-" + body;
  auto [neg, text] = signed_term(f.content, "", style);
  std::string coef = text;
  if (f.content.is_real() && f.content.re().get_den() != 1 && style != Style::Latex) coef = "(" + coef + ")";
  return (neg ? "-" : "") + coef + mul + body;
}

}  // namespace plurisign

namespace plurisign {

std::optional<Scalar> exact_quotient(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [mb, cb] = *b.terms().rbegin();
  Scalar r = a;
  Scalar q;
  while (!r.is_zero()) {
    const auto [m, c] = *r.terms().rbegin();
    if (!mb.divides(m)) return std::nullopt;
    const Scalar t(mb.quotient_of(m), c / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

}  // namespace plurisign
