#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plurisign/gaussian.hpp"

namespace plurisign {

/// Raised when two operands disagree on the kind of a parameter with the same name.
class ParameterMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ParamKind { Real, Complex };

/// A polynomial variable. A complex parameter p contributes two of these,
/// p and its formal conjugate (bar == true); a real parameter only one.
struct Indeterminate {
  std::string name;
  ParamKind kind = ParamKind::Real;
  bool bar = false;

  Indeterminate conj() const;
  friend bool operator==(const Indeterminate&, const Indeterminate&) = default;
  friend bool operator<(const Indeterminate& a, const Indeterminate& b) {
    if (int c = a.name.compare(b.name); c != 0) return c < 0;
    return a.bar < b.bar;
  }
};

class Monomial {
 public:
  using Factor = std::pair<Indeterminate, unsigned>;

  Monomial() = default;
  explicit Monomial(Indeterminate x, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned exponent(const Indeterminate& x) const;

  Monomial conj() const;
  bool divides(const Monomial& other) const;
  /// Precondition: divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted, exponents > 0
};

/// Graded lexicographic order over the name-ordered indeterminates.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial over Q(i) in parameters and their conjugates.
class Scalar {
 public:
  using TermMap = std::map<Monomial, GaussianRational, GrlexLess>;

  Scalar() = default;
  Scalar(GaussianRational c);  // NOLINT(google-explicit-constructor)
  Scalar(long c) : Scalar(GaussianRational(c)) {}  // NOLINT
  Scalar(const Monomial& m, GaussianRational c);

  static Scalar variable(const Indeterminate& x) { return {Monomial(x), GaussianRational(1)}; }
  static Scalar i() { return Scalar(GaussianRational::i()); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  GaussianRational constant() const;
  unsigned degree() const;
  std::vector<Indeterminate> indeterminates() const;

  Scalar conj() const;
  /// True iff conj() == *this.
  bool is_real() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator*=(const GaussianRational& c);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(Scalar a, const GaussianRational& c) { return a *= c; }
  friend Scalar operator*(const GaussianRational& c, Scalar a) { return a *= c; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  Scalar pow(unsigned k) const;
  void add_term(const Monomial& m, const GaussianRational& c);

  /// Machine-readable rendering accepted back by parse_expression().
  std::string str() const;

 private:
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Parameters

struct Constraint {
  enum class Kind {
    Positive,        // real, > 0
    Nonneg,          // real, >= 0
    Binary,          // real, in {0, 1}
    Sign,            // real, in {-1, 1}
    UnitModulus,     // complex, |p| = 1
    NotUnitModulus,  // complex, |p| != 1
    ImNonneg,        // complex, Im p >= 0
    Interval,        // real, lo <= p <= hi
    Excluded,        // p not in values
    Reciprocal,      // real, p = factor / other
  };
  Kind kind = Kind::Positive;
  Rational lo{0}, hi{0};
  std::vector<GaussianRational> values;
  std::string other;
  Rational factor{1};

  std::string str() const;
  /// Empty when satisfied, otherwise a short description of the violation.
  std::optional<std::string> violated_by(const std::string& name, const GaussianRational& value,
                                         const std::map<std::string, GaussianRational>& all) const;
};

struct Parameter {
  std::string name;
  ParamKind kind = ParamKind::Real;
  std::vector<Constraint> constraints;

  Indeterminate indeterminate(bool bar = false) const { return {name, kind, bar && kind == ParamKind::Complex}; }
  Scalar symbol() const { return Scalar::variable(indeterminate()); }
  Scalar conj_symbol() const { return Scalar::variable(indeterminate(true)); }
  bool has(Constraint::Kind k) const;
  /// Takes finitely many values (binary or sign).
  bool is_discrete() const { return has(Constraint::Kind::Binary) || has(Constraint::Kind::Sign); }
  /// "rho∈{0,1}", "lambda∈R≥0", "D∈C, Im D≥0".
  std::string signature() const;
};

// ---------------------------------------------------------------------------
// Rewrite rules

struct RewriteRule {
  Monomial lhs;
  Scalar rhs;
};

/// Single-monomial rewrite system. Construction rejects any rule whose
/// right-hand side is not strictly below its left-hand side in GrlexLess,
/// which makes reduction terminate. Conjugate rules are added automatically.
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<RewriteRule> rules);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  Scalar reduce(const Scalar& a) const;

 private:
  std::vector<RewriteRule> rules_;
};

class NonTerminatingRules : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Evaluation

/// Values of parameters by name. A complex parameter's conjugate indeterminate
/// is evaluated at the conjugate value.
using Assignment = std::map<std::string, GaussianRational>;

GaussianRational instantiate(const Scalar& a, const Assignment& values);
/// Partial evaluation: replaces every assigned parameter, keeps the rest symbolic.
Scalar instantiate_partial(const Scalar& a, const Assignment& values);
/// Replaces parameters by polynomials; p -> s implies conj(p) -> conj(s).
Scalar substitute(const Scalar& a, const std::map<std::string, Scalar>& replacement);

/// Constraint violations of an assignment (parameters missing from it are skipped).
std::vector<std::string> constraint_violations(const std::vector<Parameter>& params, const Assignment& values);

// ---------------------------------------------------------------------------
// Rendering

enum class Style { Plain, Pretty, Latex };

/// Plain: parseable by parse_expression. Pretty: factored, with |p|^2, Re(p), Im(p).
std::string render(const Scalar& a, Style style = Style::Plain);

/// q with a = q * b when b divides a exactly (multivariate division), else nullopt.
std::optional<Scalar> exact_quotient(const Scalar& a, const Scalar& b);

/// Positive rational content and common monomial factor g with a = content * g * rest.
struct Factored {
  GaussianRational content{1};
  Monomial common;
  Scalar rest;
};
Factored factor_content(const Scalar& a);

}  // namespace plurisign
