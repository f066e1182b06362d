#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plurisign/exterior.hpp"
#include "plurisign/liecomplex.hpp"
#include "plurisign/positivity.hpp"

namespace plurisign {

class InadmissibleMetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A real positive (1,1)-form omega = (i/2) sum G_{jk} phi^j ^ conj(phi)^k.
struct MetricSpec {
  Form omega;
  ScalarMatrix gram;
  std::vector<Parameter> params;
  /// Quantities that must be > 0 for the metric to be positive definite.
  std::vector<Scalar> positivity;

  int n() const { return omega.n(); }
};

/// n = 3: 2 omega = i r2 phi^{1~1} + i s2 phi^{2~2} + i t2 phi^{3~3}
///   + u phi^{1~2} - conj(u) phi^{2~1} + v phi^{2~3} - conj(v) phi^{3~2} + z phi^{1~3} - conj(z) phi^{3~1}.
/// Other n: omega = sum_j i a_j phi^{j~j} + sum_{j<k} (g_jk phi^{j~k} - conj(g_jk) phi^{k~j}).
/// The diagonal variant drops the off-diagonal parameters.
MetricSpec generic_metric(int n, bool diagonal = false);
/// omega = sum_j i phi^{j~j}.
MetricSpec standard_metric(int n);
/// Metric with the given Gram matrix (conjugate-symmetric).
MetricSpec metric_from_gram(ScalarMatrix gram, std::vector<Parameter> params);
/// Substitutes values; throws InadmissibleMetric naming the violated quantity
/// once a positivity entry becomes a constant <= 0.
MetricSpec specialize(const MetricSpec& m, const Assignment& values);
/// Names of the off-diagonal metric parameters (u, v, z for n = 3).
std::vector<std::string> off_diagonal_parameters(const MetricSpec& m);

/// k-fold wedge power of omega, 0 <= k <= n.
Form power(const MetricSpec& m, int k);

struct CurvatureForms {
  std::vector<Form> ddc_power;  // [k-1] = dd^c(omega^k), k = 1..n-1
  Form torsion;                 // d omega ^ d^c omega
};
CurvatureForms curvature_forms(const StructureSpec& s, const MetricSpec& m);

/// Coefficient polynomials of d(omega^{n-1}) (all must vanish).
ConditionSet balanced_condition(const StructureSpec& s, const MetricSpec& m);

/// S_l = sum_{k=1}^{n-l-2} (-1)^{n-k-l} C(n,k) C(n-k-2,l) dd^c omega^k ^ omega^{n-k-2-l}.
Form plurineg_term(const StructureSpec& s, const MetricSpec& m, int ell);
std::vector<Form> plurineg_terms(const StructureSpec& s, const MetricSpec& m);

/// dd^c(omega^{n-1})/(n-1) == (dd^c omega ^ omega + (n-2) d omega ^ d^c omega) ^ omega^{n-3}.
bool rigidity_identity_check(const StructureSpec& s, const MetricSpec& m);

// ---------------------------------------------------------------------------
// Classification

enum class Mode { Symbolic, Numeric, Sampled };
std::string to_string(Mode m);
Mode parse_mode(const std::string& text);

enum class Truth { True, False, Unknown, Conditional };
std::string to_string(Truth t);

struct Verdict {
  Truth truth = Truth::Unknown;
  std::string certificate;
  std::optional<SignVerdict> sign;
  ConditionSet conditions;
  /// Parameter values at which the property holds / fails.
  std::optional<Assignment> witness;
  std::optional<Assignment> counterexample;
  int samples = 0;
  int holds = 0;
  std::string note;
};

struct EpsilonBound {
  bool feasible = false;
  /// Supremum of admissible epsilon; nullopt means unbounded.
  std::optional<Rational> sup;
  Rational inf{0};
  bool exact = false;  // from coefficient ratios (diagonal forms) rather than bisection
};

struct ClassificationReport {
  std::string label;
  Mode mode = Mode::Symbolic;
  int n = 0;
  Assignment values;
  std::optional<Rational> epsilon;

  Verdict kahler, pluriclosed, pluripositive, plurinegative, balanced, gauduchon, guan_li, plurineg_n, higher_dim;
  std::vector<Verdict> plurineg_parts;  // one per l = 0..n-3
  std::optional<EpsilonBound> epsilon_bound;

  /// The nine verdicts in the fixed report order.
  std::vector<std::pair<std::string, const Verdict*>> fields() const;
};

struct ClassifyOptions {
  Mode mode = Mode::Symbolic;
  std::optional<Rational> epsilon;
  std::uint64_t seed = 1;
  int samples = 200;
  int directions = 64;
};

/// All forms needed by the predicates, computed once symbolically.
struct CurvaturePack {
  StructureSpec structure;
  MetricSpec metric;
  Form d_omega;
  Form d_omega_top;  // d(omega^{n-1})
  CurvatureForms curvature;
  std::vector<Form> plurineg;    // S_l
  std::vector<Form> omega_ddc;   // [q-2] = omega ^ dd^c omega^{q-1}, q = 2..n-2
};
CurvaturePack curvature_pack(const StructureSpec& s, const MetricSpec& m);

ClassificationReport classify(const StructureSpec& s, const MetricSpec& m, const ClassifyOptions& opt = {});
ClassificationReport classify(const CurvaturePack& pack, const ClassifyOptions& opt = {});

/// Exact verdicts at a full assignment of structure and metric parameters.
ClassificationReport classify_at(const CurvaturePack& pack, const Assignment& values, const ClassifyOptions& opt = {});

/// dd^c omega >= 0 and dd^c omega^q >= eps omega ^ dd^c omega^{q-1}, 2 <= q <= n-2.
Verdict higher_dim_condition(const CurvaturePack& pack, const Assignment& values, const Rational& eps,
                             const ClassifyOptions& opt = {});
/// Range of admissible eps at a full assignment.
EpsilonBound epsilon_bound(const CurvaturePack& pack, const Assignment& values, const ClassifyOptions& opt = {});

/// Admissible random assignment of every free structure and metric parameter,
/// keeping the fixed values.
Assignment sample_assignment(const CurvaturePack& pack, const Assignment& fixed, Rng& rng);
/// Validates a full or partial assignment; returns violations.
std::vector<std::string> admissibility_violations(const CurvaturePack& pack, const Assignment& values);

}  // namespace plurisign
