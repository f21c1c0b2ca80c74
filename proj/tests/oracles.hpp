#pragma once

// Test-side reference implementations, independent of the library paths they
// cross-check.

#include "burniat5/linarith.hpp"
#include "burniat5/picard.hpp"

namespace bur5::oracle {

// h^0 of d*l - sum(m_i e_i) by brute force: degree-d monomial count minus the
// exact rank of the vanishing conditions at four explicit rational points in
// general position. Negative m_i impose no condition.
long h0_bruteforce(const DivClass& c);

// Rational feasibility (strict inequalities included) by a two-phase exact
// simplex with Bland's rule.
bool feasible_simplex(const LinSystem& sys);

}  // namespace bur5::oracle
