#include "plurisign/exterior.hpp"

#include <bit>
#include <cctype>
#include <sstream>
#include <vector>

namespace plurisign {

int BasisMonomial::p() const { return std::popcount(holo); }
int BasisMonomial::q() const { return std::popcount(anti); }

namespace {

std::string index_text(int j) { return j < 10 ? std::to_string(j) : "{" + std::to_string(j) + "}"; }

std::vector<int> indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int b = 0; b < kMaxDimension; ++b) {
    if (mask & (1U << b)) out.push_back(b + 1);
  }
  return out;
}

/// Parity of #{(a, b) : a in A, b in B, a > b}.
int inversion_parity(std::uint32_t a, std::uint32_t b) {
  int count = 0;
  for (int bit = 0; bit < kMaxDimension; ++bit) {
    if (!(b & (1U << bit))) continue;
    const std::uint64_t above = ~((std::uint64_t{1} << (bit + 1)) - 1);
    count += std::popcount(static_cast<std::uint32_t>(a & above));
  }
  return count & 1;
}

}  // namespace

std::string BasisMonomial::str() const {
  std::string s = "phi[";
  for (int j : indices(holo)) s += index_text(j);
  s += ",";
  for (int j : indices(anti)) s += "~" + index_text(j);
  return s + "]";
}

std::string BasisMonomial::code() const {
  std::string s;
  for (int j : indices(holo)) s += index_text(j);
  for (int j : indices(anti)) s += "~" + index_text(j);
  return s;
}

BasisMonomial parse_monomial(std::string_view code, int n) {
  BasisMonomial m;
  int last_holo = 0;
  int last_anti = 0;
  bool in_anti = false;
  for (std::size_t k = 0; k < code.size(); ++k) {
    char c = code[k];
    bool bar = false;
    if (c == '~') {
      bar = true;
      in_anti = true;
      if (++k >= code.size()) throw std::invalid_argument("dangling '~' in monomial '" + std::string(code) + "'");
      c = code[k];
    }
    if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0') {
      throw std::invalid_argument("bad index in monomial '" + std::string(code) + "'");
    }
    if (!bar && in_anti) throw std::invalid_argument("holomorphic index after '~' in '" + std::string(code) + "'");
    const int j = c - '0';
    if (j > n) throw DimensionMismatch("index " + std::to_string(j) + " exceeds n = " + std::to_string(n));
    int& last = bar ? last_anti : last_holo;
    if (j <= last) throw std::invalid_argument("indices not strictly ascending in '" + std::string(code) + "'");
    last = j;
    (bar ? m.anti : m.holo) |= 1U << (j - 1);
  }
  return m;
}

std::pair<int, BasisMonomial> wedge_monomials(const BasisMonomial& a, const BasisMonomial& b) {
  if ((a.holo & b.holo) || (a.anti & b.anti)) return {0, {}};
  int parity = (a.q() * b.p()) & 1;
  parity ^= inversion_parity(a.holo, b.holo);
  parity ^= inversion_parity(a.anti, b.anti);
  return {parity ? -1 : 1, BasisMonomial{a.holo | b.holo, a.anti | b.anti}};
}

// ---------------------------------------------------------------------------

Form::Form(int n) : n_(n) {
  if (n < 0 || n > kMaxDimension) throw DimensionMismatch("dimension out of range: " + std::to_string(n));
}

Form Form::mixed(int n) {
  Form f(n);
  f.mixed_ = true;
  return f;
}

Form Form::constant(int n, const Scalar& c) { return monomial(n, {}, c); }

Form Form::monomial(int n, const BasisMonomial& m, const Scalar& c) {
  Form f(n);
  f.add_term(m, c);
  return f;
}

Form Form::phi(int n, int j) {
  if (j < 1 || j > n) throw DimensionMismatch("phi index out of range");
  return monomial(n, {1U << (j - 1), 0});
}

Form Form::phibar(int n, int j) {
  if (j < 1 || j > n) throw DimensionMismatch("phi index out of range");
  return monomial(n, {0, 1U << (j - 1)});
}

Form Form::pair(int n, int j, int k) { return wedge(phi(n, j), phibar(n, k)); }

Scalar Form::coefficient(const BasisMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

std::optional<int> Form::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int d = terms_.begin()->first.degree();
  if (terms_.rbegin()->first.degree() != d) return std::nullopt;
  return d;
}

std::optional<std::pair<int, int>> Form::bidegree() const {
  if (terms_.empty()) return std::nullopt;
  const auto& first = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    if (m.p() != first.p() || m.q() != first.q()) return std::nullopt;
  }
  return std::pair{first.p(), first.q()};
}

Form Form::component(int p, int q) const {
  Form f(n_);
  f.mixed_ = mixed_;
  for (const auto& [m, c] : terms_) {
    if (m.p() == p && m.q() == q) f.terms_.emplace(m, c);
  }
  return f;
}

Form Form::conj() const {
  Form f(n_);
  f.mixed_ = mixed_;
  for (const auto& [m, c] : terms_) {
    Scalar v = c.conj();
    if ((m.p() * m.q()) & 1) v = -v;
    f.terms_.emplace(BasisMonomial{m.anti, m.holo}, std::move(v));
  }
  return f;
}

Form Form::map_coefficients(const std::function<Scalar(const Scalar&)>& fn) const {
  Form f(n_);
  f.mixed_ = mixed_;
  for (const auto& [m, c] : terms_) f.add_term(m, fn(c));
  return f;
}

void Form::add_term(const BasisMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  if (m.p() > n_ || m.q() > n_ || (n_ < kMaxDimension && ((m.holo | m.anti) >> n_) != 0)) {
    throw DimensionMismatch("monomial " + m.str() + " outside dimension " + std::to_string(n_));
  }
  if (!mixed_ && !terms_.empty() && terms_.begin()->first.degree() != m.degree()) {
    throw DegreeError("adding a degree-" + std::to_string(m.degree()) + " term to a degree-" +
                      std::to_string(terms_.begin()->first.degree()) + " form (use Form::mixed)");
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Form::check_compatible(const Form& o) const {
  if (n_ != o.n_) {
    throw DimensionMismatch("forms of dimension " + std::to_string(n_) + " and " + std::to_string(o.n_));
  }
}

Form Form::operator-() const {
  Form f = *this;
  for (auto& [m, c] : f.terms_) c = -c;
  return f;
}

Form& Form::operator+=(const Form& o) {
  check_compatible(o);
  mixed_ = mixed_ || o.mixed_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  check_compatible(o);
  mixed_ = mixed_ || o.mixed_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Form& Form::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  TermMap next;
  for (auto& [m, v] : terms_) {
    Scalar p = v * c;
    if (!p.is_zero()) next.emplace(m, std::move(p));
  }
  terms_ = std::move(next);
  return *this;
}

Form wedge(const Form& a, const Form& b) {
  if (a.n() != b.n()) {
    throw DimensionMismatch("wedge of forms in dimensions " + std::to_string(a.n()) + " and " + std::to_string(b.n()));
  }
  Form r = (a.is_mixed() || b.is_mixed()) ? Form::mixed(a.n()) : Form(a.n());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const auto [sign, m] = wedge_monomials(ma, mb);
      if (sign == 0) continue;
      Scalar c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(m, c);
    }
  }
  return r;
}

Form power(const Form& a, int k) {
  if (k < 0) throw std::invalid_argument("negative wedge power");
  Form r = Form::constant(a.n(), Scalar(1));
  for (int j = 0; j < k; ++j) r = wedge(r, a);
  return r;
}

Form volume_form(int n) {
  const std::uint32_t all = n == kMaxDimension ? ~0U : ((1U << n) - 1);
  return Form::monomial(n, {all, all}, Scalar(GaussianRational::i_power(static_cast<long>(n) * n)));
}

Scalar vol_coefficient(const Form& a) {
  if (a.is_zero()) return {};
  const auto bd = a.bidegree();
  if (!bd || bd->first != a.n() || bd->second != a.n()) throw DegreeError("vol_coefficient needs an (n,n)-form");
  const BasisMonomial top = volume_form(a.n()).terms().begin()->first;
  return a.coefficient(top) * GaussianRational::i_power(-static_cast<long>(a.n()) * a.n());
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

struct Written {
  std::string text;
  GaussianRational unit;  // written product = unit * canonical monomial
};

Written written_form(const BasisMonomial& m, int n, bool latex) {
  const std::uint32_t k = m.holo & m.anti;
  Form product = Form::constant(n, Scalar(1));
  std::vector<std::string> parts;
  for (int j : indices(k)) {
    product = wedge(product, Form::pair(n, j, j) * Scalar::i());
    parts.push_back(latex ? "\\sqrt{-1}\\varphi^{" + std::to_string(j) + "\\bar{" + std::to_string(j) + "}}"
                          : "iφ^{" + index_text(j) + "~" + index_text(j) + "}");
  }
  const BasisMonomial rest{m.holo & ~k, m.anti & ~k};
  if (rest.holo || rest.anti) {
    product = wedge(product, Form::monomial(n, rest));
    if (latex) {
      std::string s = "\\varphi^{";
      for (int j : indices(rest.holo)) s += std::to_string(j);
      for (int j : indices(rest.anti)) s += "\\bar{" + std::to_string(j) + "}";
      parts.push_back(s + "}");
    } else {
      std::string s = "φ^{";
      for (int j : indices(rest.holo)) s += index_text(j);
      for (int j : indices(rest.anti)) s += "~" + index_text(j);
      parts.push_back(s + "}");
    }
  }
  std::string text;
  for (const auto& p : parts) text += (text.empty() ? "" : (latex ? " \\wedge " : "∧")) + p;
  return {text, product.coefficient(m).constant()};
}

}  // namespace

std::string render(const Form& a, FormStyle style) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    if (style == FormStyle::Canonical) {
      const std::string coef = render(c, Style::Plain);
      os << (first ? "" : " + ") << (c.terms().size() > 1 ? "(" + coef + ")" : coef) << "*" << m.str();
      first = false;
      continue;
    }
    const bool latex = style == FormStyle::Latex;
    const Written w = written_form(m, a.n(), latex);
    const Scalar coef = c * w.unit.inverse();
    std::string ctext = render(coef, latex ? Style::Latex : Style::Pretty);
    const bool compound = coef.terms().size() > 1 && ctext.front() != '(' && ctext.find('*') == std::string::npos;
    if (compound || (coef.terms().size() > 1 && ctext.back() != ')')) ctext = "(" + ctext + ")";
    std::string term;
    if (w.text.empty()) {
      term = ctext;
    } else if (ctext == "1") {
      term = w.text;
    } else if (ctext == "-1") {
      term = "-" + w.text;
    } else {
      term = ctext + (latex ? " " : " ") + w.text;
    }
    if (!first && term.front() == '-') {
      os << " - " << term.substr(1);
    } else {
      os << (first ? "" : " + ") << term;
    }
    first = false;
  }
  return os.str();
}

}  // namespace plurisign
