#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "burniat5/bicover.hpp"

namespace bur5 {

// Local threshold of at most two smooth curve branches crossing transversally
// at a point, with the given nonnegative coefficients: 1/max of the
// coefficients, or +infinity (nullopt) when every coefficient vanishes. This
// is the only local model the catalog produces; anything else is an error.
std::optional<Rat> lct_local(const std::vector<Rat>& coeffs);

struct LctResult {
    std::optional<Rat> value;        // nullopt encodes +infinity
    std::vector<std::string> point;  // 1 or 2 curve names, sorted
    std::string point_str() const;
};

// lct of a concrete effective divisor supported on rigid catalog curves:
// minimum over the configuration's points. Every such point carries at most
// two support curves; ties are broken lexicographically by sorted name pair.
LctResult lct_divisor(const QDivisorX& d);

struct GlctUpperResult {
    Rat bound;                             // lct of the best decomposition
    std::map<std::string, long> witness;   // downstairs coefficient vector
    QDivisorX witness_pullback;            // coefficients doubled on branch curves
};

// Enumerates every decomposition of the target as a nonnegative integer
// combination of the 13 rigid downstairs catalog curves with coefficients at
// most max_coeff, pulls each back, and returns the minimal lct found. The
// result is an upper bound for glct relative to this search space. Throws
// std::runtime_error("no decomposition found") when the target is not
// reachable within the bound.
GlctUpperResult glct_upper_search(const DivClass& target, int max_coeff);

// Downstairs rigid curves usable by the search, in the deterministic
// tie-break order.
const std::vector<std::string>& rigid_downstairs();

// The three shipped witness families with threshold-attaining lct:
//   even anti-invariant (n >= 2):  lct = 1/(4n-3) in |2n K_X|_1
//   odd invariant       (n >= 1):  lct = 1/(4n-3) in |(2n+1) K_X|_0
//   odd anti-invariant  (n >= 1):  lct = 1/(4n)   in |(2n+1) K_X|_1
QDivisorX witness_even_anti(long n);
QDivisorX witness_odd_inv(long n);
QDivisorX witness_odd_anti(long n);

}  // namespace bur5
