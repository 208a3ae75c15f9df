#pragma once

#include <string>
#include <string_view>

#include "pssm/rational_function.hpp"

namespace pssm {

// Parses the canonical polynomial / rational-function grammar:
//   integer coefficients, explicit '*', '^' for powers, '/' with a
//   parenthesized or atomic divisor, e.g. (a_0^3*a_1 + 4*nu*a_0*a_1^2)/(24*nu^3).
// With intern=true unknown names are added to the table; otherwise they are
// an error (used when reading candidate files against a fixed universe).
RationalFunction parse_ratfunc(std::string_view text, const SymbolTablePtr& table, bool intern = false);

Polynomial parse_polynomial(std::string_view text, const SymbolTablePtr& table, bool intern = false);

}  // namespace pssm
