#include "plurisign/liecomplex.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace plurisign {

StructureSpec::StructureSpec(int n, std::vector<Form> d_phi, std::vector<Parameter> params, RuleSet rules,
                             std::string label)
    : n_(n), d_phi_(std::move(d_phi)), params_(std::move(params)), rules_(std::move(rules)), label_(std::move(label)) {
  if (n_ < 1 || n_ > kMaxDimension) throw DimensionMismatch("structure dimension out of range");
  if (static_cast<int>(d_phi_.size()) != n_) {
    throw DimensionMismatch("expected " + std::to_string(n_) + " structure equations, got " +
                            std::to_string(d_phi_.size()));
  }
  std::set<std::string> names;
  for (const auto& p : params_) {
    if (!names.insert(p.name).second) throw std::invalid_argument("duplicate parameter '" + p.name + "'");
  }
  for (std::size_t j = 0; j < d_phi_.size(); ++j) {
    const Form& f = d_phi_[j];
    if (f.n() != n_) throw DimensionMismatch("d(phi^" + std::to_string(j + 1) + ") lives in another dimension");
    if (!f.is_zero() && f.degree() != 2) throw DegreeError("d(phi^" + std::to_string(j + 1) + ") is not a 2-form");
    check_parameters(f);
    d_phi_[j] = reduce(f);
  }
  for (const auto& r : rules_.rules()) {
    check_parameters(Form::constant(n_, Scalar(r.lhs, 1)));
    check_parameters(Form::constant(n_, r.rhs));
  }
}

const Parameter* StructureSpec::find_param(const std::string& name) const {
  auto it = std::find_if(params_.begin(), params_.end(), [&](const Parameter& p) { return p.name == name; });
  return it == params_.end() ? nullptr : &*it;
}

void StructureSpec::check_parameters(const Form& a, const std::vector<Parameter>& extra) const {
  for (const auto& [m, c] : a.terms()) {
    for (const auto& x : c.indeterminates()) {
      const Parameter* p = find_param(x.name);
      if (p == nullptr) {
        auto it = std::find_if(extra.begin(), extra.end(), [&](const Parameter& q) { return q.name == x.name; });
        if (it != extra.end()) p = &*it;
      }
      if (p == nullptr) throw ParameterMismatch("undeclared parameter '" + x.name + "'");
      if (p->kind != x.kind) throw ParameterMismatch("parameter '" + x.name + "' has the wrong kind");
    }
  }
}

Form StructureSpec::reduce(const Form& a) const {
  if (rules_.empty()) return a;
  return a.map_coefficients([this](const Scalar& c) { return rules_.reduce(c); });
}

StructureSpec StructureSpec::specialize(const Assignment& given) const {
  Assignment values = given;
  for (const auto& p : params_) {
    for (const auto& c : p.constraints) {
      if (c.kind == Constraint::Kind::Reciprocal && !values.count(p.name) && values.count(c.other)) {
        values[p.name] = GaussianRational(c.factor) / values.at(c.other);
      }
    }
  }
  for (const auto& [name, v] : values) {
    if (find_param(name) == nullptr) throw std::invalid_argument("unknown structure parameter '" + name + "'");
  }
  if (auto bad = constraint_violations(params_, values); !bad.empty()) throw InadmissibleParameters(bad.front());

  std::vector<Parameter> kept;
  for (const auto& p : params_) {
    if (!values.count(p.name)) kept.push_back(p);
  }
  std::vector<RewriteRule> rules;
  for (const auto& r : rules_.rules()) {
    bool touched = false;
    for (const auto& [x, e] : r.lhs.factors()) touched = touched || values.count(x.name) > 0;
    if (!touched) rules.push_back({r.lhs, instantiate_partial(r.rhs, values)});
  }
  std::vector<Form> d;
  for (const auto& f : d_phi_) {
    d.push_back(f.map_coefficients([&](const Scalar& c) { return instantiate_partial(c, values); }));
  }
  StructureSpec out(n_, std::move(d), std::move(kept), RuleSet(std::move(rules)), label_);
  std::vector<std::vector<std::string>> groups;
  for (const auto& g : nonvanishing_) {
    std::vector<std::string> rest;
    bool some_nonzero = false;
    for (const auto& name : g) {
      auto it = values.find(name);
      if (it == values.end()) {
        rest.push_back(name);
      } else if (!it->second.is_zero()) {
        some_nonzero = true;
      }
    }
    if (some_nonzero) continue;
    if (rest.empty()) throw std::invalid_argument("parameters of a non-vanishing group are all zero");
    groups.push_back(std::move(rest));
  }
  out.set_nonvanishing(std::move(groups));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Canonical factor list of a monomial: holomorphic indices first, then anti.
std::vector<BasisMonomial> factor_list(const BasisMonomial& m) {
  std::vector<BasisMonomial> out;
  for (int b = 0; b < kMaxDimension; ++b) {
    if (m.holo & (1U << b)) out.push_back({1U << b, 0});
  }
  for (int b = 0; b < kMaxDimension; ++b) {
    if (m.anti & (1U << b)) out.push_back({0, 1U << b});
  }
  return out;
}

Form d_generator(const StructureSpec& s, const BasisMonomial& g) {
  if (g.holo) return s.d_phi(std::countr_zero(g.holo) + 1);
  return s.d_phi(std::countr_zero(g.anti) + 1).conj();
}

Form d_monomial(const StructureSpec& s, const BasisMonomial& m) {
  const int n = s.n();
  const auto factors = factor_list(m);
  Form out(n);
  BasisMonomial prefix;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    BasisMonomial suffix;
    for (std::size_t r = k + 1; r < factors.size(); ++r) {
      suffix.holo |= factors[r].holo;
      suffix.anti |= factors[r].anti;
    }
    Form term = wedge(wedge(Form::monomial(n, prefix), d_generator(s, factors[k])), Form::monomial(n, suffix));
    if (k & 1U) {
      out -= term;
    } else {
      out += term;
    }
    prefix.holo |= factors[k].holo;
    prefix.anti |= factors[k].anti;
  }
  return out;
}

void require_pure(const Form& a, const char* what) {
  if (a.is_mixed() || (!a.is_zero() && !a.bidegree())) {
    throw DegreeError(std::string(what) + " needs a form of pure bidegree");
  }
}

}  // namespace

Form differential(const StructureSpec& s, const Form& a) {
  if (a.n() != s.n()) throw DimensionMismatch("form and structure have different dimensions");
  Form out = a.is_mixed() ? Form::mixed(s.n()) : Form(s.n());
  for (const auto& [m, c] : a.terms()) {
    if (m.degree() == 2 * s.n()) continue;
    out += d_monomial(s, m) * c;
  }
  return s.reduce(out);
}

std::pair<Form, Form> del_dbar_split(const StructureSpec& s, const Form& a) {
  require_pure(a, "del_dbar_split");
  if (a.is_zero()) return {Form(s.n()), Form(s.n())};
  const auto [p, q] = *a.bidegree();
  const Form da = differential(s, a);
  return {da.component(p + 1, q), da.component(p, q + 1)};
}

Form ddc(const StructureSpec& s, const Form& a) {
  require_pure(a, "ddc");
  const Form dbar = del_dbar_split(s, a).second;
  if (dbar.is_zero()) return Form(s.n());
  const Form deldbar = del_dbar_split(s, dbar).first;
  return s.reduce(deldbar * Scalar::i());
}

Form dc(const StructureSpec& s, const Form& a) {
  require_pure(a, "dc");
  const auto [del, dbar] = del_dbar_split(s, a);
  // 1/(2i) = -i/2
  return s.reduce((del - dbar) * Scalar(GaussianRational(Rational(0), Rational(-1, 2))));
}

StructureReport check_structure(const StructureSpec& s) {
  StructureReport r;
  const int n = s.n();
  for (int j = 1; j <= n; ++j) {
    const Form bad = s.d_phi(j).component(0, 2);
    if (!bad.is_zero()) {
      r.integrable = false;
      r.violations.push_back("d(phi^" + std::to_string(j) + ") has a (0,2) part: " + render(bad));
    }
    const Form dd = differential(s, s.d_phi(j));
    if (!dd.is_zero()) {
      r.jacobi = false;
      r.violations.push_back("d(d(phi^" + std::to_string(j) + ")) = " + render(dd));
    }
  }
  const std::uint32_t all = n == kMaxDimension ? ~0U : ((1U << n) - 1);
  for (int b = 0; b < n; ++b) {
    for (int side = 0; side < 2; ++side) {
      BasisMonomial m{all, all};
      (side == 0 ? m.holo : m.anti) &= ~(1U << b);
      const Form top = differential(s, Form::monomial(n, m));
      if (!top.is_zero()) {
        r.unimodular = false;
        r.violations.push_back("d(" + m.str() + ") = " + render(top));
      }
    }
  }
  return r;
}

}  // namespace plurisign
