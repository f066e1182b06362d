#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plurisign/exterior.hpp"
#include "plurisign/scalar.hpp"

namespace plurisign {

/// Parameter values outside their declared constraints.
class InadmissibleParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Lie algebra with left-invariant complex structure, given by the values
/// d(phi^j) on a (1,0)-coframe. Coefficients may involve declared parameters.
class StructureSpec {
 public:
  StructureSpec() = default;
  /// Checks shapes only (dimension, degree 2, declared parameters, unique
  /// names); structural validity is reported by check_structure().
  StructureSpec(int n, std::vector<Form> d_phi, std::vector<Parameter> params, RuleSet rules = {},
                std::string label = {});

  int n() const { return n_; }
  const std::vector<Form>& d_phi() const { return d_phi_; }
  const Form& d_phi(int j) const { return d_phi_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<Parameter>& params() const { return params_; }
  const Parameter* find_param(const std::string& name) const;
  const RuleSet& rules() const { return rules_; }
  const std::string& label() const { return label_; }

  /// Groups of parameters that may not vanish simultaneously, e.g. (rho, B, c).
  const std::vector<std::vector<std::string>>& nonvanishing() const { return nonvanishing_; }
  void set_nonvanishing(std::vector<std::vector<std::string>> groups) { nonvanishing_ = std::move(groups); }

  /// Replaces parameters by values (removing them from the declared list).
  StructureSpec specialize(const Assignment& values) const;

  /// Throws ParameterMismatch if the form uses an undeclared or mis-kinded parameter.
  void check_parameters(const Form& a, const std::vector<Parameter>& extra = {}) const;

  Scalar reduce(const Scalar& c) const { return rules_.reduce(c); }
  Form reduce(const Form& a) const;

 private:
  int n_ = 0;
  std::vector<Form> d_phi_;
  std::vector<Parameter> params_;
  RuleSet rules_;
  std::string label_;
  std::vector<std::vector<std::string>> nonvanishing_;
};

/// Exterior derivative of an invariant form (coefficients are constants for d).
Form differential(const StructureSpec& s, const Form& a);

/// (del a, delbar a) for a of pure bidegree.
std::pair<Form, Form> del_dbar_split(const StructureSpec& s, const Form& a);

/// dd^c a = i del delbar a, with d^c = (1/2i)(del - delbar).
Form ddc(const StructureSpec& s, const Form& a);
Form dc(const StructureSpec& s, const Form& a);

struct StructureReport {
  bool integrable = true;
  bool jacobi = true;
  bool unimodular = true;
  std::vector<std::string> violations;

  bool ok() const { return integrable && jacobi && unimodular; }
};

StructureReport check_structure(const StructureSpec& s);

}  // namespace plurisign
