#pragma once

#include "dwork/ratfunc.hpp"

#include <string_view>

namespace dwork {

// Parses infix text (integers, identifiers, + - * / ^, parentheses) into a
// polynomial over `vars` with coefficients in Q(params). Division is allowed
// only by expressions free of `vars`; exponents must be integer literals.
MultiPoly parse_poly(std::string_view text, const VarsPtr &vars, const ParamContext &params);

// Parses a parameter-only expression.
RatFunc parse_ratfunc(std::string_view text, const ParamContext &params);

} // namespace dwork
