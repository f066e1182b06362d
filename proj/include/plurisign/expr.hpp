#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "plurisign/scalar.hpp"

namespace plurisign {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a coefficient expression over the declared parameters.
///
/// Grammar: integers, `i`, parameter names, `conj(x)`, `re(x)`, `im(x)`,
/// `abs2(x)`, binary `+ - *`, division by a nonzero constant, `^` with a
/// nonnegative integer exponent, and parentheses. For example
/// `(1/2)*t2*(lambda^2 + rho^2 - D - conj(D))`.
Scalar parse_expression(std::string_view text, const std::vector<Parameter>& params);

}  // namespace plurisign
