#include "plurisign/positivity.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace plurisign {

// ---------------------------------------------------------------------------
// Matrices

GaussianRational hermitian_value(const Matrix& k, const Vector& x) {
  GaussianRational s;
  for (std::size_t a = 0; a < k.size(); ++a) {
    for (std::size_t b = 0; b < k.size(); ++b) {
      if (!k[a][b].is_zero()) s += x[a].conj() * k[a][b] * x[b];
    }
  }
  return s;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.empty() ? 0 : m[0].size(), Vector(m.size()));
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = 0; b < m[a].size(); ++b) t[b][a] = m[a][b];
  }
  return t;
}

ScalarMatrix transpose(const ScalarMatrix& m) {
  ScalarMatrix t(m.empty() ? 0 : m[0].size(), std::vector<Scalar>(m.size()));
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = 0; b < m[a].size(); ++b) t[b][a] = m[a][b];
  }
  return t;
}

Matrix instantiate(const ScalarMatrix& m, const Assignment& values) {
  Matrix out(m.size());
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (const auto& e : m[a]) out[a].push_back(instantiate(e, values));
  }
  return out;
}

bool is_hermitian(const Matrix& m) {
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (m[a].size() != m.size()) return false;
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (!(m[a][b] == m[b][a].conj())) return false;
    }
  }
  return true;
}

namespace {

Vector unit_vector(std::size_t size, std::size_t j) {
  Vector e(size);
  e[j] = GaussianRational(1);
  return e;
}

/// Negative direction of a Hermitian K, or nullopt when K is PSD; `definite`
/// is cleared whenever a zero pivot is met.
std::optional<Vector> negative_direction(const Matrix& k, bool& definite) {
  const std::size_t m = k.size();
  if (m == 0) return std::nullopt;
  for (std::size_t j = 0; j < m; ++j) {
    if (sgn(k[j][j].re()) < 0) return unit_vector(m, j);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!k[j][j].is_zero()) continue;
    for (std::size_t l = 0; l < m; ++l) {
      if (l == j || k[j][l].is_zero()) continue;
      // x = a e_j + e_l with a = -c K_jl gives x^*Kx = K_ll - 2c|K_jl|^2 = -1.
      const Rational c = (k[l][l].re() + 1) / (2 * k[j][l].norm());
      Vector x(m);
      x[j] = k[j][l] * GaussianRational(Rational(-c));
      x[l] = GaussianRational(1);
      return x;
    }
  }
  std::size_t pivot = m;
  for (std::size_t j = 0; j < m; ++j) {
    if (sgn(k[j][j].re()) > 0) {
      pivot = j;
      break;
    }
  }
  if (pivot == m) {
    // The remaining matrix is zero.
    definite = false;
    return std::nullopt;
  }
  std::vector<std::size_t> rest;
  for (std::size_t a = 0; a < m; ++a) {
    if (a != pivot) rest.push_back(a);
  }
  const GaussianRational inv = k[pivot][pivot].inverse();
  Matrix s(rest.size(), Vector(rest.size()));
  for (std::size_t a = 0; a < rest.size(); ++a) {
    for (std::size_t b = 0; b < rest.size(); ++b) {
      s[a][b] = k[rest[a]][rest[b]] - k[rest[a]][pivot] * k[pivot][rest[b]] * inv;
    }
  }
  auto y = negative_direction(s, definite);
  if (!y) return std::nullopt;
  Vector x(m);
  GaussianRational acc;
  for (std::size_t b = 0; b < rest.size(); ++b) {
    x[rest[b]] = (*y)[b];
    acc += k[pivot][rest[b]] * (*y)[b];
  }
  x[pivot] = -(acc * inv);
  return x;
}

}  // namespace

PsdResult psd_test(const Matrix& k) {
  if (!is_hermitian(k)) throw std::invalid_argument("psd_test: matrix is not Hermitian");
  PsdResult r;
  bool definite = true;
  r.negative_direction = negative_direction(k, definite);
  r.psd = !r.negative_direction;
  r.definite = r.psd && definite;
  return r;
}

namespace {

Scalar det_rows(const ScalarMatrix& m, std::size_t row, std::uint32_t cols, std::map<std::uint32_t, Scalar>& memo) {
  if (row == m.size()) return Scalar(1);
  if (auto it = memo.find(cols); it != memo.end()) return it->second;
  Scalar total;
  int sign = 1;
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (!(cols & (1U << c))) continue;
    if (!m[row][c].is_zero()) {
      Scalar minor = det_rows(m, row + 1, cols & ~(1U << c), memo);
      if (!minor.is_zero()) {
        Scalar t = m[row][c] * minor;
        if (sign < 0) t = -t;
        total += t;
      }
    }
    sign = -sign;
  }
  memo.emplace(cols, total);
  return total;
}

}  // namespace

Scalar determinant(const ScalarMatrix& m) {
  if (m.size() > 31) throw std::invalid_argument("determinant: matrix too large");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw std::invalid_argument("determinant: matrix not square");
  }
  std::map<std::uint32_t, Scalar> memo;
  return det_rows(m, 0, m.empty() ? 0 : (1U << m.size()) - 1, memo);
}

std::vector<Scalar> principal_minors(const ScalarMatrix& m, std::vector<std::uint32_t>* subsets) {
  std::vector<Scalar> out;
  const std::uint32_t n = static_cast<std::uint32_t>(m.size());
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (mask & (1U << b)) idx.push_back(b);
    }
    ScalarMatrix sub(idx.size(), std::vector<Scalar>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = m[idx[a]][idx[b]];
    }
    out.push_back(determinant(sub));
    if (subsets) subsets->push_back(mask);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forms

ScalarMatrix gram_against_lines(const Form& p) {
  const int n = p.n();
  ScalarMatrix h(n, std::vector<Scalar>(n));
  if (p.is_zero()) return h;
  const auto bd = p.bidegree();
  if (!bd || bd->first != n - 1 || bd->second != n - 1) {
    throw DegreeError("gram_against_lines needs an (n-1, n-1)-form");
  }
  const std::uint32_t all = n == kMaxDimension ? ~0U : ((1U << n) - 1);
  const GaussianRational to_vol = GaussianRational::i() * GaussianRational::i_power(-static_cast<long>(n) * n);
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t j = all & ~m.holo;
    const std::uint32_t k = all & ~m.anti;
    const auto [sign, top] = wedge_monomials(m, BasisMonomial{j, k});
    Scalar v = c * to_vol;
    if (sign < 0) v = -v;
    h[std::countr_zero(j)][std::countr_zero(k)] += v;
  }
  return h;
}

Form simple_positive(int n, const Vector& c) {
  Form f(n);
  for (int j = 0; j < n; ++j) {
    if (c[j].is_zero()) continue;
    for (int k = 0; k < n; ++k) {
      if (c[k].is_zero()) continue;
      f += Form::pair(n, j + 1, k + 1) * Scalar(GaussianRational::i() * c[j] * c[k].conj());
    }
  }
  return f;
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Zero: return "ZERO";
    case Sign::Positive: return "POSITIVE";
    case Sign::StrictlyPositive: return "STRICTLY_POSITIVE";
    case Sign::Negative: return "NEGATIVE";
    case Sign::StrictlyNegative: return "STRICTLY_NEGATIVE";
    case Sign::Indefinite: return "INDEFINITE";
    case Sign::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

void require_real_qq(const Form& p, const char* what) {
  if (p.is_zero()) return;
  const auto bd = p.bidegree();
  if (!bd || bd->first != bd->second) throw DegreeError(std::string(what) + " needs a form of bidegree (q, q)");
  if (!p.is_real()) throw std::invalid_argument(std::string(what) + " needs a real form");
}

Form constant_form(const Form& p) {
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_constant()) throw std::invalid_argument("form has symbolic coefficients; instantiate first");
  }
  return p;
}

Matrix constant_gram(const Form& p) { return instantiate(transpose(gram_against_lines(p)), {}); }

Matrix negate(Matrix m) {
  for (auto& row : m) {
    for (auto& e : row) e = -e;
  }
  return m;
}

/// Product of i phi^{k k-bar} over the indices in mask.
Form diagonal_product(int n, std::uint32_t mask) {
  Form f = Form::constant(n, Scalar(1));
  for (int b = 0; b < n; ++b) {
    if (mask & (1U << b)) f = wedge(f, Form::pair(n, b + 1, b + 1) * Scalar::i());
  }
  return f;
}

std::string index_set(std::uint32_t mask) {
  std::string s = "{";
  for (int b = 0; b < kMaxDimension; ++b) {
    if (mask & (1U << b)) s += (s.size() > 1 ? "," : "") + std::to_string(b + 1);
  }
  return s + "}";
}

struct Blocks {
  bool ok = true;
  /// K -> (indices outside K, block matrix over them)
  std::map<std::uint32_t, std::pair<std::vector<int>, ScalarMatrix>> blocks;
};

Blocks split_blocks(const Form& p) {
  Blocks out;
  const int n = p.n();
  const int q = p.bidegree()->first;
  const std::uint32_t all = n == kMaxDimension ? ~0U : ((1U << n) - 1);
  auto block_for = [&](std::uint32_t k) -> std::pair<std::vector<int>, ScalarMatrix>& {
    auto it = out.blocks.find(k);
    if (it == out.blocks.end()) {
      std::vector<int> idx;
      for (int b = 0; b < n; ++b) {
        if (!(k & (1U << b))) idx.push_back(b);
      }
      const std::size_t sz = idx.size();
      it = out.blocks.emplace(k, std::pair{idx, ScalarMatrix(sz, std::vector<Scalar>(sz))}).first;
    }
    return it->second;
  };
  auto position = [](const std::vector<int>& idx, int b) {
    return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), b) - idx.begin());
  };
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t common = m.holo & m.anti;
    if (m.holo == m.anti) {
      for (int a = 0; a < n; ++a) {
        if (!(m.holo & (1U << a))) continue;
        const std::uint32_t k = m.holo & ~(1U << a);
        const Form unit = wedge(diagonal_product(n, k), Form::pair(n, a + 1, a + 1) * Scalar::i());
        auto& [idx, mat] = block_for(k);
        const std::size_t pos = position(idx, a);
        mat[pos][pos] += c * (unit.coefficient(m).constant() * GaussianRational(q)).inverse();
      }
    } else if (std::popcount(common) == q - 1) {
      const int a = std::countr_zero(m.holo & ~common);
      const int b = std::countr_zero(m.anti & ~common);
      const Form unit = wedge(diagonal_product(n, common), Form::pair(n, a + 1, b + 1) * Scalar::i());
      auto& [idx, mat] = block_for(common);
      mat[position(idx, a)][position(idx, b)] += c * unit.coefficient(m).constant().inverse();
    } else {
      out.ok = false;
      return out;
    }
  }
  (void)all;
  return out;
}

/// Coefficient of p on prod_{k in L} i phi^{k k-bar}, for each diagonal support L.
std::vector<std::pair<std::uint32_t, Scalar>> diagonal_coefficients(const Form& p) {
  std::vector<std::pair<std::uint32_t, Scalar>> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.holo != m.anti) continue;
    const Form unit = diagonal_product(p.n(), m.holo);
    out.emplace_back(m.holo, c * unit.coefficient(m).constant().inverse());
  }
  return out;
}

}  // namespace

std::optional<std::string> block_certificate(const Form& p) {
  require_real_qq(p, "block_certificate");
  if (p.is_zero()) return std::string("zero form");
  const int q = p.bidegree()->first;
  if (q == 0) {
    const GaussianRational c = instantiate(p.coefficient({}), {});
    if (sgn(c.re()) >= 0) return std::string("nonnegative constant");
    return std::nullopt;
  }
  const Blocks b = split_blocks(constant_form(p));
  if (!b.ok) return std::nullopt;
  std::ostringstream os;
  os << "strongly positive: sum over K of (prod_{k in K} i phi^{k~k}) ^ beta_K with PSD (1,1)-blocks beta_K, K in ";
  bool first = true;
  for (const auto& [k, blk] : b.blocks) {
    if (!psd_test(instantiate(blk.second, {})).psd) return std::nullopt;
    os << (first ? "" : " ") << index_set(k);
    first = false;
  }
  return os.str();
}

namespace {

/// Evidence that p is not >= 0: directions eta_1..eta_{n-1-q} with p ^ prod i eta ^ conj(eta) < 0.
std::optional<Witness> find_negative(const Form& p, int q, const SignOptions& opt, Rng& rng) {
  const int n = p.n();
  const int extra = n - 1 - q;
  auto try_with = [&](const std::vector<Vector>& etas) -> std::optional<Witness> {
    Form w = p;
    for (const auto& eta : etas) w = wedge(w, simple_positive(n, eta));
    if (w.is_zero()) return std::nullopt;
    const Matrix k = constant_gram(w);
    const PsdResult r = psd_test(k);
    if (r.psd) return std::nullopt;
    Witness out{etas, {}};
    out.directions.push_back(*r.negative_direction);
    Form full = w;
    full = wedge(full, simple_positive(n, *r.negative_direction));
    out.value = vol_coefficient(full).constant();
    return out;
  };
  // Coordinate directions first, then random ones.
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != extra) continue;
    std::vector<Vector> etas;
    for (int b = 0; b < n; ++b) {
      if (mask & (1U << b)) etas.push_back(unit_vector(n, b));
    }
    if (auto w = try_with(etas)) return w;
  }
  for (int t = 0; t < opt.directions; ++t) {
    std::vector<Vector> etas;
    for (int e = 0; e < extra; ++e) {
      Vector eta(n);
      for (int j = 0; j < n; ++j) eta[j] = GaussianRational(Rational(rng.between(-3, 3)), Rational(rng.between(-3, 3)));
      etas.push_back(std::move(eta));
    }
    if (auto w = try_with(etas)) return w;
  }
  return std::nullopt;
}

Witness flip(Witness w) {
  w.value = -w.value;
  return w;
}

}  // namespace

SignVerdict sign_of_form(const Form& p0, const SignOptions& opt) {
  require_real_qq(p0, "sign_of_form");
  SignVerdict v;
  if (p0.is_zero()) {
    v.tag = Sign::Zero;
    v.certificate = "zero form";
    return v;
  }
  const Form p = constant_form(p0);
  const int n = p.n();
  const int q = p.bidegree()->first;
  if (q == 0 || q == n) {
    const GaussianRational c = q == 0 ? instantiate(p.coefficient({}), {}) : instantiate(vol_coefficient(p), {});
    const Witness w{{}, c};
    if (sgn(c.re()) > 0) {
      v.tag = Sign::StrictlyPositive;
      v.positive = w;
    } else {
      v.tag = Sign::StrictlyNegative;
      v.negative = w;
    }
    v.certificate = "multiple of " + std::string(q == 0 ? "1" : "Vol") + " by " + c.str();
    return v;
  }
  if (q == n - 1) {
    const Matrix k = constant_gram(p);
    const PsdResult pos = psd_test(k);
    const PsdResult neg = psd_test(negate(k));
    auto diagonal_witness = [&](int want) -> std::optional<Witness> {
      for (int j = 0; j < n; ++j) {
        if (sgn(k[j][j].re()) == want) return Witness{{unit_vector(n, j)}, k[j][j]};
      }
      return std::nullopt;
    };
    if (!pos.psd) v.negative = Witness{{*pos.negative_direction}, hermitian_value(k, *pos.negative_direction)};
    if (!neg.psd) v.positive = Witness{{*neg.negative_direction}, hermitian_value(k, *neg.negative_direction)};
    if (pos.psd) {
      v.tag = pos.definite ? Sign::StrictlyPositive : Sign::Positive;
      v.certificate = pos.definite ? "Gram-of-lines matrix positive definite" : "Gram-of-lines matrix PSD";
      if (!v.positive) v.positive = diagonal_witness(1);
    } else if (neg.psd) {
      v.tag = neg.definite ? Sign::StrictlyNegative : Sign::Negative;
      v.certificate = neg.definite ? "Gram-of-lines matrix negative definite" : "Gram-of-lines matrix NSD";
      if (!v.negative) v.negative = diagonal_witness(-1);
    } else {
      v.tag = Sign::Indefinite;
      v.certificate = "Gram-of-lines matrix has directions of both signs";
    }
    return v;
  }
  if (auto c = block_certificate(p)) {
    v.tag = Sign::Positive;
    v.certificate = *c;
  } else if (auto c2 = block_certificate(-p)) {
    v.tag = Sign::Negative;
    v.certificate = "negative of a form that is " + *c2;
  }
  Rng rng(opt.seed);
  if (v.tag != Sign::Positive) v.negative = find_negative(p, q, opt, rng);
  if (v.tag != Sign::Negative) {
    if (auto w = find_negative(-p, q, opt, rng)) v.positive = flip(*w);
  }
  if (v.tag == Sign::Unknown) {
    if (v.negative && v.positive) {
      v.tag = Sign::Indefinite;
      v.certificate = "test forms of both signs";
    } else {
      v.reason = "no block certificate for a (" + std::to_string(q) + "," + std::to_string(q) +
                 ")-form; sampled pairings found " +
                 (v.negative ? "a negative value only" : v.positive ? "a positive value only" : "no strict sign");
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Conditions

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Ge: return ">= 0";
    case Relation::Gt: return "> 0";
    case Relation::Eq: return "= 0";
  }
  return "";
}

bool ConditionSet::holds_at(const Assignment& values) const {
  for (const auto& c : conditions) {
    const GaussianRational v = instantiate(c.poly, values);
    switch (c.rel) {
      case Relation::Eq:
        if (!v.is_zero()) return false;
        break;
      case Relation::Ge:
        if (!v.is_real() || sgn(v.re()) < 0) return false;
        break;
      case Relation::Gt:
        if (!v.is_real() || sgn(v.re()) <= 0) return false;
        break;
    }
  }
  return true;
}

namespace {

const Parameter* lookup(const std::vector<Parameter>& params, const std::string& name) {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Scalar unit_normalized(const Scalar& a) {
  if (a.is_zero()) return a;
  return a * a.terms().rbegin()->second.inverse();
}

}  // namespace

Scalar normalize_equation(const Scalar& a, const std::vector<Parameter>& params, const std::vector<Scalar>& positive) {
  if (a.is_zero()) return a;
  const Factored f = factor_content(a);
  Monomial keep;
  for (const auto& [x, e] : f.common.factors()) {
    const Parameter* p = lookup(params, x.name);
    const bool nonzero = p && (p->has(Constraint::Kind::Positive) || p->has(Constraint::Kind::Sign) ||
                               p->has(Constraint::Kind::UnitModulus));
    if (!nonzero) keep = keep * Monomial(x, e);
  }
  Scalar core = f.rest * Scalar(keep, GaussianRational(1));
  for (const auto& p : positive) {
    if (p.is_constant()) continue;
    while (core.degree() >= p.degree()) {
      auto q = exact_quotient(core, p);
      if (!q) break;
      core = *q;
    }
  }
  if (core.is_constant()) return Scalar(1);
  const Scalar n1 = unit_normalized(core);
  const Scalar n2 = unit_normalized(core.conj());
  return n2.str() < n1.str() ? n2 : n1;
}

namespace {

/// The real multiple of a when a is a unit times a real polynomial, scaled so
/// that the leading coefficient has real part 1 (or is i).
std::optional<Scalar> canonical_real(const Scalar& a) {
  if (a.is_zero()) return std::nullopt;
  const Scalar c = a.conj();
  const auto& [m, lc] = *a.terms().rbegin();
  auto it = c.terms().find(m);
  if (it == c.terms().end()) return std::nullopt;
  const GaussianRational mu = it->second / lc;
  if (!(c == a * mu)) return std::nullopt;
  Scalar r = a + c;
  if (r.is_zero()) r = a * GaussianRational::i();
  const GaussianRational lead = r.terms().rbegin()->second;
  const Rational scale = sgn(lead.re()) != 0 ? lead.re() : lead.im();
  return r * GaussianRational(Rational(1 / scale));
}

}  // namespace

std::vector<Scalar> real_equations(const Scalar& a, const std::vector<Parameter>& params,
                                   const std::vector<Scalar>& positive) {
  const Scalar n = normalize_equation(a, params, positive);
  if (n.is_zero()) return {};
  if (auto r = canonical_real(n)) return {*r};
  std::vector<Scalar> out;
  const GaussianRational half(Rational(1, 2));
  const GaussianRational half_i(Rational(0), Rational(-1, 2));
  for (const Scalar& part : {(n + n.conj()) * half, (n - n.conj()) * half_i}) {
    if (part.is_zero()) continue;
    const Scalar q = normalize_equation(part, params, positive);
    out.push_back(canonical_real(q).value_or(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SignProver

SignProver::SignProver(std::vector<Parameter> params, std::vector<Scalar> positive,
                       std::vector<std::vector<std::string>> nonvanishing)
    : params_(std::move(params)), positive_(std::move(positive)), nonvanishing_(std::move(nonvanishing)) {}

const Parameter* SignProver::find(const std::string& name) const { return lookup(params_, name); }

namespace {

bool positive_real_coefficient(const GaussianRational& c) { return c.is_real() && sgn(c.re()) > 0; }

/// Exponents grouped by parameter name: (exp of p, exp of conj p).
std::map<std::string, std::pair<unsigned, unsigned>> grouped(const Monomial& m) {
  std::map<std::string, std::pair<unsigned, unsigned>> g;
  for (const auto& [x, e] : m.factors()) (x.bar ? g[x.name].second : g[x.name].first) += e;
  return g;
}

}  // namespace

bool SignProver::term_nonneg(const Monomial& m, const GaussianRational& c) const {
  if (!positive_real_coefficient(c)) return false;
  for (const auto& [name, exps] : grouped(m)) {
    const Parameter* p = find(name);
    if (!p) return false;
    if (p->kind == ParamKind::Complex) {
      if (exps.first != exps.second) return false;
      continue;
    }
    if (exps.first % 2 == 0) continue;
    const bool nonneg_param = p->has(Constraint::Kind::Positive) || p->has(Constraint::Kind::Nonneg) ||
                              p->has(Constraint::Kind::Binary) || p->has(Constraint::Kind::Reciprocal) ||
                              std::any_of(p->constraints.begin(), p->constraints.end(), [](const Constraint& k) {
                                return k.kind == Constraint::Kind::Interval && sgn(k.lo) >= 0;
                              });
    if (!nonneg_param) return false;
  }
  return true;
}

bool SignProver::term_positive(const Monomial& m, const GaussianRational& c) const {
  if (!term_nonneg(m, c)) return false;
  for (const auto& [name, exps] : grouped(m)) {
    const Parameter* p = find(name);
    if (p->kind == ParamKind::Complex) {
      if (!p->has(Constraint::Kind::UnitModulus)) return false;
      continue;
    }
    if (!p->has(Constraint::Kind::Positive) && !p->has(Constraint::Kind::Reciprocal) && !p->has(Constraint::Kind::Sign)) {
      return false;
    }
  }
  return true;
}

bool SignProver::manifest(const Scalar& a) const {
  return std::all_of(a.terms().begin(), a.terms().end(), [&](const auto& t) { return term_nonneg(t.first, t.second); });
}

std::optional<Scalar> SignProver::reduce_by_positive(const Scalar& a) const {
  auto bad_terms = [&](const Scalar& s) {
    return std::count_if(s.terms().begin(), s.terms().end(),
                         [&](const auto& t) { return !term_nonneg(t.first, t.second); });
  };
  Scalar cur = a;
  for (int round = 0; round < 64; ++round) {
    const auto bad = bad_terms(cur);
    if (bad == 0) return cur;
    bool progressed = false;
    for (const auto& [tm, tc] : cur.terms()) {
      if (term_nonneg(tm, tc)) continue;
      for (const auto& q : positive_) {
        for (const auto& [qm, qc] : q.terms()) {
          if (term_nonneg(qm, qc) || !qm.divides(tm)) continue;
          const GaussianRational lambda = tc / qc;
          if (!positive_real_coefficient(lambda)) continue;
          const Monomial mult = qm.quotient_of(tm);
          if (!term_nonneg(mult, GaussianRational(1))) continue;
          Scalar next = cur - Scalar(mult, lambda) * q;
          if (bad_terms(next) < bad) {
            cur = std::move(next);
            progressed = true;
            break;
          }
        }
        if (progressed) break;
      }
      if (progressed) break;
    }
    if (!progressed) return std::nullopt;
  }
  return std::nullopt;
}

bool SignProver::nonneg(const Scalar& a) const {
  if (a.is_zero() || manifest(a)) return true;
  return reduce_by_positive(a).has_value();
}

bool SignProver::strict_by_group(const Scalar& a) const {
  const Factored f = factor_content(a);
  if (!term_positive(f.common, f.content)) return false;
  if (!manifest(f.rest)) return false;
  for (const auto& group : nonvanishing_) {
    bool all = true;
    for (const auto& g : group) {
      bool found = false;
      for (const auto& [m, c] : f.rest.terms()) {
        const auto gr = grouped(m);
        if (gr.size() == 1 && gr.begin()->first == g && !m.is_one()) found = true;
      }
      all = all && found;
    }
    if (all) return true;
  }
  return false;
}

bool SignProver::positive(const Scalar& a) const {
  if (a.is_zero()) return false;
  if (a.is_constant()) return positive_real_coefficient(a.constant());
  if (manifest(a)) {
    for (const auto& [m, c] : a.terms()) {
      if (term_positive(m, c)) return true;
    }
    if (strict_by_group(a)) return true;
  }
  // a = lambda * m * Q + rest with Q > 0, m > 0 and rest >= 0.
  for (const auto& q : positive_) {
    for (const auto& [tm, tc] : a.terms()) {
      for (const auto& [qm, qc] : q.terms()) {
        if (!qm.divides(tm)) continue;
        const GaussianRational lambda = tc / qc;
        if (!positive_real_coefficient(lambda)) continue;
        const Monomial mult = qm.quotient_of(tm);
        if (!term_positive(mult, GaussianRational(1))) continue;
        const Scalar rest = a - Scalar(mult, lambda) * q;
        if (rest.is_zero() || nonneg(rest)) return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Symbolic sign

namespace {

void add_condition(ConditionSet& set, const Scalar& poly, Relation rel, std::string provenance) {
  if (poly.is_zero()) return;
  for (const auto& c : set.conditions) {
    if (c.poly == poly && c.rel == rel) return;
  }
  set.conditions.push_back({poly, rel, std::move(provenance)});
}

}  // namespace

SymbolicSign symbolic_sign(const Form& p, const SignProver& prover) {
  require_real_qq(p, "symbolic_sign");
  SymbolicSign out;
  if (p.is_zero()) {
    out.tag = Sign::Zero;
    return out;
  }
  const int n = p.n();
  const int q = p.bidegree()->first;
  bool pos_proven = true;
  bool neg_proven = true;
  bool pos_impossible = false;
  bool neg_impossible = false;

  auto consider = [&](const Scalar& minor, bool odd, const std::string& where) {
    // minor of K; the matching minor of -K carries (-1)^{size}.
    const Scalar neg = odd ? -minor : minor;
    if (!prover.nonneg(minor)) {
      pos_proven = false;
      add_condition(out.nonneg, minor, Relation::Ge, where);
    }
    if (!prover.nonneg(neg)) {
      neg_proven = false;
      add_condition(out.nonpos, neg, Relation::Ge, where + " of the negative");
    }
  };

  if (q == 0 || q == n) {
    const Scalar c = q == 0 ? p.coefficient({}) : vol_coefficient(p);
    consider(c, true, q == 0 ? "constant" : "volume coefficient");
    if (prover.positive(c)) out.tag = Sign::StrictlyPositive;
    else if (prover.positive(-c)) out.tag = Sign::StrictlyNegative;
    else if (pos_proven) out.tag = Sign::Positive;
    else if (neg_proven) out.tag = Sign::Negative;
    return out;
  }

  if (q == n - 1) {
    const ScalarMatrix k = transpose(gram_against_lines(p));
    std::vector<std::uint32_t> subsets;
    const auto minors = principal_minors(k, &subsets);
    for (std::size_t t = 0; t < minors.size(); ++t) {
      consider(minors[t], std::popcount(subsets[t]) % 2 == 1, "principal minor " + index_set(subsets[t]));
    }
    for (int j = 0; j < n; ++j) {
      if (prover.positive(-k[j][j])) pos_impossible = true;
      if (prover.positive(k[j][j])) neg_impossible = true;
    }
    bool leading_positive = true;
    bool leading_negative = true;
    for (int s = 1; s <= n; ++s) {
      const std::uint32_t mask = (1U << s) - 1;
      const auto idx = static_cast<std::size_t>(std::find(subsets.begin(), subsets.end(), mask) - subsets.begin());
      leading_positive = leading_positive && prover.positive(minors[idx]);
      leading_negative = leading_negative && prover.positive(s % 2 ? -minors[idx] : minors[idx]);
    }
    if (pos_proven) out.tag = leading_positive ? Sign::StrictlyPositive : Sign::Positive;
    else if (neg_proven) out.tag = leading_negative ? Sign::StrictlyNegative : Sign::Negative;
  } else {
    const Blocks b = split_blocks(p);
    if (!b.ok) {
      pos_proven = neg_proven = false;
      out.nonneg.sufficient_only = out.nonpos.sufficient_only = true;
    } else {
      out.nonneg.sufficient_only = out.nonpos.sufficient_only = true;
      for (const auto& [kmask, blk] : b.blocks) {
        std::vector<std::uint32_t> subsets;
        const auto minors = principal_minors(blk.second, &subsets);
        for (std::size_t t = 0; t < minors.size(); ++t) {
          consider(minors[t], std::popcount(subsets[t]) % 2 == 1,
                   "block " + index_set(kmask) + " minor " + std::to_string(subsets[t]));
        }
      }
    }
    for (const auto& [mask, c] : diagonal_coefficients(p)) {
      if (prover.positive(-c)) pos_impossible = true;
      if (prover.positive(c)) neg_impossible = true;
    }
    if (pos_proven) out.tag = Sign::Positive;
    else if (neg_proven) out.tag = Sign::Negative;
  }
  if (pos_impossible) add_condition(out.nonneg, Scalar(-1), Relation::Ge, "a diagonal coefficient is negative");
  if (neg_impossible) add_condition(out.nonpos, Scalar(-1), Relation::Ge, "a diagonal coefficient is positive");
  return out;
}

}  // namespace plurisign
