#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fuzcal/errors.hpp"
#include "fuzcal/sphere.hpp"

namespace fuzcal {

/// Malformed function text. column() is 1-based.
class ParseError : public ConfigError {
public:
  ParseError(const std::string &message, std::size_t column);
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

/// Polynomial in x1, x2, x3: numbers, +, -, *, ^ with a non-negative integer
/// exponent, and parentheses, e.g. "x1*x1 + x2^2 - 0.5*(x3 + 1)".
Polynomial parse_polynomial(std::string_view text);

/// A polynomial, or one of the forms "sigma-profile:<preset>" (the preset's
/// q(sigma)), "vortex:<k>" (e^{i k phi}) and "delta-phi".
SphereFunction parse_sphere_function(std::string_view text);

}  // namespace fuzcal
