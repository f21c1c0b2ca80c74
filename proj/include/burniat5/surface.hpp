#pragma once

#include <string>
#include <vector>

#include "burniat5/picard.hpp"

namespace bur5 {

enum class Branch { none, B1, B2, B3 };

std::string branch_str(Branch b);

// A named curve on Y. The rigid catalog curves are l-independent fixed
// members (exceptional curves, lines through two of the points, and the
// chosen members t11, t22, t33 of the pencils |t1|, |t2|, |t3|); the mobile
// entries l, t1..t4 stand for general members of their systems.
struct CurveY {
    std::string name;
    DivClass cls;
    Branch branch = Branch::none;
    bool mobile = false;
};

// All 18 named curves: l, e1..e4, h12..h34, t1..t4, t11, t22, t33.
const std::vector<CurveY>& catalog();

const CurveY& lookup(const std::string& name);
bool has_curve(const std::string& name);

// Incidence of two distinct rigid catalog curves. Two rigid curves meet
// exactly when their classes pair to 1: curves through a common blown-up
// point are separated by the blow-up and their classes pair to 0. Throws for
// mobile curves, whose incidences are generic.
bool meets(const std::string& a, const std::string& b);

// The three branch divisors B1, B2, B3 as component lists and the classes
// L1, L2, L3 of the bidouble cover data.
const std::vector<std::string>& branch_components(int i);   // i = 1,2,3
DivClass branch_class(int i);                               // displayed class
DivClass l_class(int i);

struct BuildingDataReport {
    bool class_identity[3];   // components of B_i sum to the displayed class
    bool cover_relation[3];   // 2 L_i = B_j + B_k
    bool adjoint_identity;    // 2 K_Y + (B1+B2+B3) = -K_Y
    bool pass() const;
};

BuildingDataReport validate_building_data();

// Same checks against externally supplied component classes; used by the CLI
// catalog-override hook.
BuildingDataReport validate_building_data(
    const std::vector<std::pair<std::string, DivClass>>& overrides);

}  // namespace bur5
