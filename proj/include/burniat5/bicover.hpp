#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "burniat5/surface.hpp"

namespace bur5 {

// Curve on the bidouble cover X. Numerically every curve the arguments touch
// lives in pull(Pic(Y) (x) Q): a curve with ramification 2 (its downstairs
// curve lies in the branch locus) has numerical class phi^*(down)/2, one with
// ramification 1 has class phi^*(down). We carry the downstairs class scaled
// by 1/ram ("half class"); intersection numbers on X are then
//   ixn(A, B) = 4 * pair(halfclass(A), halfclass(B)).
struct CurveX {
    std::string name;   // E1..E3, E4t, H12..H34, T11, T22, T33
    std::string down;   // downstairs catalog name
    int ram = 2;        // 2 iff the downstairs curve is a branch component
};

// The 13 rigid upstairs curves.
const std::vector<CurveX>& catalog_x();
const CurveX& lookup_x(const std::string& name);
bool has_curve_x(const std::string& name);

DivClass halfclass(const CurveX& c);
DivClass halfclass_kx();                      // K_X = phi^*(-K_Y)/2
DivClass halfclass_pull(const DivClass& c);   // phi^*(c)

Rat ixn(const DivClass& half_a, const DivClass& half_b);
Rat ixn_curves(const std::string& a, const std::string& b);

// Reduced ramification divisors R_i over B_i and their union R.
const std::vector<std::string>& r_components(int i);  // i = 1,2,3
std::vector<std::string> r_all();

struct Invariants {
    Rat k2;
    long pg, q;
    Rat chi;
};
Invariants invariants();

// Formal effective combination of upstairs catalog curves. The optional
// residual marker is only meaningful to the certificate checker; the concrete
// operations reject it.
struct QDivisorX {
    std::map<std::string, Rat> coeffs;
    bool has_residual = false;

    QDivisorX& add(const std::string& name, Rat c);
};

// Sum of coeff * halfclass over the support. Throws when a residual marker is
// present or a support curve is unknown.
DivClass class_of(const QDivisorX& d);

Rat ixn_div(const QDivisorX& a, const QDivisorX& b);

struct EigenSystem {
    int m = 0, i = 0;
    std::vector<std::string> fixed;  // reduced ramification components, coeff 1
    DivClass mobile;                 // downstairs class of the moving part
    long dim = 0;                    // h0 of the moving part
};

// Decomposition of |m K_X| into the invariant part (i = 0) and the three
// anti-invariant parts (i = 1,2,3) of the bidouble group action.
EigenSystem eigen_system(int m, int i);

// Sum of the four eigenspace dimensions; equals 1 + 5 m (m-1) / 2 for m >= 2.
long plurigenus(int m);

// Membership of a concrete divisor in |m K_X|_i: the class matches
// m * (-K_Y) / 2 in pulled-back coordinates and the eigenpart's fixed divisor
// is a sub-divisor.
bool is_member(const QDivisorX& d, int m, int i);

}  // namespace bur5
