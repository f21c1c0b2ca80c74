#pragma once

#include <string>

#include "burniat5/bicover.hpp"

namespace bur5 {

// Parses the divisor mini-language used on the command line:
//   4*H13 + 2*E3 + 2*E1 + 2*H24
//   3/2*T22 + pull(e4) + H12
// Coefficients are nonnegative rationals written as p or p/q; names are rigid
// upstairs catalog curves or pull(<rigid downstairs name>). Throws
// std::invalid_argument with a position on malformed input, and rejects
// mobile curves.
QDivisorX parse_divisor(const std::string& text);

}  // namespace bur5
