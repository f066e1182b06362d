#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plurisign/exterior.hpp"
#include "plurisign/random.hpp"
#include "plurisign/scalar.hpp"

namespace plurisign {

using Vector = std::vector<GaussianRational>;
using Matrix = std::vector<std::vector<GaussianRational>>;
using ScalarMatrix = std::vector<std::vector<Scalar>>;

// ---------------------------------------------------------------------------
// Exact Hermitian matrices

/// x^* K x.
GaussianRational hermitian_value(const Matrix& k, const Vector& x);
Matrix transpose(const Matrix& m);
ScalarMatrix transpose(const ScalarMatrix& m);
Matrix instantiate(const ScalarMatrix& m, const Assignment& values);
bool is_hermitian(const Matrix& m);

struct PsdResult {
  bool psd = false;
  bool definite = false;
  /// When !psd: a vector x with x^* K x < 0.
  std::optional<Vector> negative_direction;
};

/// Exact test by symmetric Gaussian elimination; K must be Hermitian.
PsdResult psd_test(const Matrix& k);

Scalar determinant(const ScalarMatrix& m);
/// Determinants of the principal submatrices, indexed by nonempty subsets
/// (bitmask order). subsets receives the masks when non-null.
std::vector<Scalar> principal_minors(const ScalarMatrix& m, std::vector<std::uint32_t>* subsets = nullptr);

// ---------------------------------------------------------------------------
// Positivity of forms

/// H_{jk} = vol_coefficient(p ^ i phi^j ^ conj(phi)^k) for p of bidegree (n-1, n-1),
/// so that vol_coefficient(p ^ i eta ^ conj(eta)) = sum_{j,k} c_j conj(c_k) H_{jk}.
ScalarMatrix gram_against_lines(const Form& p);

/// i eta ^ conj(eta) for eta = sum_j c_j phi^j.
Form simple_positive(int n, const Vector& c);

enum class Sign { Zero, Positive, StrictlyPositive, Negative, StrictlyNegative, Indefinite, Unknown };

std::string to_string(Sign s);

/// A test direction: the value of vol_coefficient(p ^ prod_k i eta_k ^ conj(eta_k)).
/// One direction suffices for (n-1, n-1)-forms.
struct Witness {
  std::vector<Vector> directions;
  GaussianRational value;
};

struct SignVerdict {
  Sign tag = Sign::Unknown;
  std::optional<Witness> positive;
  std::optional<Witness> negative;
  std::string certificate;
  std::string reason;

  bool nonneg() const { return tag == Sign::Zero || tag == Sign::Positive || tag == Sign::StrictlyPositive; }
  bool nonpos() const { return tag == Sign::Zero || tag == Sign::Negative || tag == Sign::StrictlyNegative; }
  /// Proven not >= 0.
  bool not_nonneg() const { return negative.has_value(); }
  bool not_nonpos() const { return positive.has_value(); }
};

struct SignOptions {
  int directions = 64;
  std::uint64_t seed = 1;
};

/// Sign of a real (q, q)-form with constant coefficients. Exact for q = n - 1 and
/// q = 0, n; otherwise a block certificate or sampled evidence (three-valued).
SignVerdict sign_of_form(const Form& p, const SignOptions& opt = {});

/// Sufficient certificate of (strong) positivity for a constant (q, q)-form:
/// the form is a sum over |K| = q - 1 of i^{(q-1)^2} phi^K ^ conj(phi)^K wedged
/// with PSD (1,1)-blocks. Empty when no certificate exists.
std::optional<std::string> block_certificate(const Form& p);

// ---------------------------------------------------------------------------
// Conditions

enum class Relation { Ge, Gt, Eq };
std::string to_string(Relation r);

struct Condition {
  Scalar poly;
  Relation rel = Relation::Ge;
  std::string provenance;
};

struct ConditionSet {
  std::vector<Condition> conditions;
  /// True when the conditions are only sufficient (block certificates).
  bool sufficient_only = false;

  bool empty() const { return conditions.empty(); }
  bool holds_at(const Assignment& values) const;
};

/// Normal form for equality conditions: equal up to a nonzero Gaussian-rational
/// unit, conjugation, monomials in nonvanishing parameters (positive, sign,
/// unit-modulus) and exact factors drawn from the strictly positive list.
Scalar normalize_equation(const Scalar& a, const std::vector<Parameter>& params,
                          const std::vector<Scalar>& positive = {});
/// The real equations equivalent to a = 0: one when a is real up to a unit,
/// otherwise its real and imaginary parts, each normalized.
std::vector<Scalar> real_equations(const Scalar& a, const std::vector<Parameter>& params,
                                   const std::vector<Scalar>& positive = {});

/// Symbolic sign reasoning from declared constraints, a list of strictly
/// positive quantities (metric minors) and non-vanishing groups.
class SignProver {
 public:
  SignProver(std::vector<Parameter> params, std::vector<Scalar> positive = {},
             std::vector<std::vector<std::string>> nonvanishing = {});

  /// a >= 0 for every admissible assignment.
  bool nonneg(const Scalar& a) const;
  /// a > 0 for every admissible assignment.
  bool positive(const Scalar& a) const;
  /// a != 0 for every admissible assignment.
  bool nonzero(const Scalar& a) const { return positive(a) || positive(-a) || (a.is_constant() && !a.is_zero()); }

 private:
  bool term_nonneg(const Monomial& m, const GaussianRational& c) const;
  bool term_positive(const Monomial& m, const GaussianRational& c) const;
  bool manifest(const Scalar& a) const;
  std::optional<Scalar> reduce_by_positive(const Scalar& a) const;
  bool strict_by_group(const Scalar& a) const;
  const Parameter* find(const std::string& name) const;

  std::vector<Parameter> params_;
  std::vector<Scalar> positive_;
  std::vector<std::vector<std::string>> nonvanishing_;
};

/// Symbolic sign of a real (q, q)-form: principal-minor conditions for
/// q = n - 1 (necessary and sufficient), block conditions (sufficient) otherwise.
struct SymbolicSign {
  Sign tag = Sign::Unknown;  // decided sign, Unknown when conditional
  ConditionSet nonneg;       // conditions for p >= 0
  ConditionSet nonpos;       // conditions for p <= 0
};
SymbolicSign symbolic_sign(const Form& p, const SignProver& prover);

}  // namespace plurisign
