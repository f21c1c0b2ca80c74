#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "burniat5/rational.hpp"

namespace bur5 {

// Class in Pic(Y) tensor Q for Y the blow-up of P^2 at four general points,
// written in the basis (l, e1, e2, e3, e4) with raw signed coefficients, so
// e.g. B1 = 3l + e1 - 3e2 - e3 - e4 is the vector (3, 1, -3, -1, -1).
struct DivClass {
    std::array<Rat, 5> c{};

    DivClass() = default;
    DivClass(Rat l, Rat e1, Rat e2, Rat e3, Rat e4)
        : c{std::move(l), std::move(e1), std::move(e2), std::move(e3), std::move(e4)} {}

    friend bool operator==(const DivClass& a, const DivClass& b) { return a.c == b.c; }
    DivClass& operator+=(const DivClass& o);
    DivClass& operator-=(const DivClass& o);
    friend DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
    friend DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
    friend DivClass operator*(const Rat& s, DivClass a);

    bool is_integral() const;
    std::string str() const;
};

// Intersection form diag(+1,-1,-1,-1,-1).
Rat pair(const DivClass& a, const DivClass& b);

// K_Y = -3l + e1 + e2 + e3 + e4.
DivClass canonical_class();

// The ten (-1)-curves e1..e4 and h_ij = l - ei - ej (i<j), in the fixed
// reduction order (e1..e4, h12, h13, h14, h23, h24, h34).
const std::vector<DivClass>& negative_curves();

// Extremal rays of the nef cone, the dual of the cone spanned by the ten
// negative curves. Computed once by exact double description and cached.
const std::vector<DivClass>& nef_rays();

// Membership of c in the rational cone generated by the negative curves,
// decided by exact linear feasibility.
bool is_effective(const DivClass& c);

// Negative-curve reduction route: repeatedly subtract the first (-1)-curve
// pairing negatively, accept when the terminal class pairs >= 0 with every
// nef extremal ray. Integral classes only.
bool is_effective_reduction(const DivClass& c);

// Terminal nef class of the reduction, when c is effective.
std::optional<DivClass> reduce_to_nef(const DivClass& c);

// h^0(Y, O(c)) for integral c: 0 when not effective, else Riemann-Roch on the
// nef terminal class. Throws std::invalid_argument on non-integral input.
long h0(const DivClass& c);

}  // namespace bur5
