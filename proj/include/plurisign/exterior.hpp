#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "plurisign/scalar.hpp"

namespace plurisign {

/// Ambient complex dimensions are bounded by the width of the index bitmask.
inline constexpr int kMaxDimension = 32;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// phi^I ^ conj(phi)^J with I, J as bitmasks (bit j-1 for index j). The
/// canonical ordering puts every holomorphic factor first, each side ascending.
struct BasisMonomial {
  std::uint32_t holo = 0;
  std::uint32_t anti = 0;

  int p() const;
  int q() const;
  int degree() const { return p() + q(); }
  bool is_diagonal() const { return holo == anti; }
  /// Canonical text rendering, e.g. "phi[12,~1~2]".
  std::string str() const;
  /// Document grammar: "12~1~2", "1~2", "~3".
  std::string code() const;

  friend bool operator==(const BasisMonomial&, const BasisMonomial&) = default;
  friend bool operator<(const BasisMonomial& a, const BasisMonomial& b) {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    if (a.holo != b.holo) return a.holo < b.holo;
    return a.anti < b.anti;
  }
};

/// Parses the document grammar; indices must be strictly ascending in each part.
BasisMonomial parse_monomial(std::string_view code, int n);

/// Sign and product of a ^ b in canonical order; sign 0 when an index repeats.
std::pair<int, BasisMonomial> wedge_monomials(const BasisMonomial& a, const BasisMonomial& b);

/// Exterior form on the complexified dual of C^n with polynomial coefficients.
class Form {
 public:
  using TermMap = std::map<BasisMonomial, Scalar>;

  explicit Form(int n = 0);
  /// A form allowed to hold several total degrees at once.
  static Form mixed(int n);
  static Form constant(int n, const Scalar& c);
  static Form monomial(int n, const BasisMonomial& m, const Scalar& c = Scalar(1));
  /// phi^j, 1-based.
  static Form phi(int n, int j);
  /// conj(phi)^j, 1-based.
  static Form phibar(int n, int j);
  /// phi^j ^ conj(phi)^k, written phi^{j k-bar}.
  static Form pair(int n, int j, int k);

  int n() const { return n_; }
  bool is_mixed() const { return mixed_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const BasisMonomial& m) const;

  /// Total degree when homogeneous (nullopt for zero or mixed content).
  std::optional<int> degree() const;
  /// Bidegree when every term has the same (p, q).
  std::optional<std::pair<int, int>> bidegree() const;
  Form component(int p, int q) const;

  Form conj() const;
  /// True iff conj() == *this.
  bool is_real() const { return conj() == *this; }
  Form map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

  void add_term(const BasisMonomial& m, const Scalar& c);

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Scalar& c) { return a *= c; }
  friend Form operator*(const Scalar& c, Form a) { return a *= c; }
  friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  void check_compatible(const Form& o) const;

  int n_ = 0;
  bool mixed_ = false;
  TermMap terms_;
};

Form wedge(const Form& a, const Form& b);
/// k-fold wedge power; power(a, 0) is the constant 1.
Form power(const Form& a, int k);

/// The top form i^{n^2} phi^{1..n} ^ conj(phi)^{1..n} = prod_j (i phi^{j j-bar}).
Form volume_form(int n);
/// s with a = s * Vol. Throws DegreeError unless a is zero or of bidegree (n, n).
Scalar vol_coefficient(const Form& a);

enum class FormStyle {
  Canonical,  // c*phi[12,~1~2] over canonical monomials
  Shorthand,  // common diagonal factors written as i phi^{k~k}
  Latex,
};

std::string render(const Form& a, FormStyle style = FormStyle::Canonical);

}  // namespace plurisign
