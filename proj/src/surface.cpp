#include "burniat5/surface.hpp"

#include <map>
#include <stdexcept>

namespace bur5 {

std::string branch_str(Branch b) {
    switch (b) {
        case Branch::B1: return "B1";
        case Branch::B2: return "B2";
        case Branch::B3: return "B3";
        default: return "none";
    }
}

namespace {

DivClass cls_l() { return DivClass(1, 0, 0, 0, 0); }
DivClass cls_e(int i) {
    DivClass d;
    d.c[i] = 1;
    return d;
}
DivClass cls_h(int i, int j) {
    DivClass d = cls_l();
    d.c[i] = -1;
    d.c[j] = -1;
    return d;
}
DivClass cls_t(int i) {
    DivClass d = cls_l();
    d.c[i] = -1;
    return d;
}

std::vector<CurveY> build_catalog() {
    std::vector<CurveY> v;
    v.push_back({"l", cls_l(), Branch::none, true});
    for (int i = 1; i <= 4; ++i)
        v.push_back({"e" + std::to_string(i), cls_e(i), Branch::none, false});
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            v.push_back({"h" + std::to_string(i) + std::to_string(j), cls_h(i, j),
                         Branch::none, false});
    for (int i = 1; i <= 4; ++i)
        v.push_back({"t" + std::to_string(i), cls_t(i), Branch::none, true});
    for (int i = 1; i <= 3; ++i)
        v.push_back({"t" + std::to_string(i) + std::to_string(i), cls_t(i),
                     Branch::none, false});
    // branch membership per the building data
    auto set_branch = [&](const std::string& n, Branch b) {
        for (auto& c : v)
            if (c.name == n) c.branch = b;
    };
    set_branch("e1", Branch::B1);
    set_branch("h23", Branch::B1);
    set_branch("h24", Branch::B1);
    set_branch("t22", Branch::B1);
    set_branch("e2", Branch::B2);
    set_branch("h13", Branch::B2);
    set_branch("h34", Branch::B2);
    set_branch("t33", Branch::B2);
    set_branch("e3", Branch::B3);
    set_branch("h12", Branch::B3);
    set_branch("h14", Branch::B3);
    set_branch("t11", Branch::B3);
    return v;
}

}  // namespace

const std::vector<CurveY>& catalog() {
    static const std::vector<CurveY> c = build_catalog();
    return c;
}

bool has_curve(const std::string& name) {
    for (const auto& c : catalog())
        if (c.name == name) return true;
    return false;
}

const CurveY& lookup(const std::string& name) {
    for (const auto& c : catalog())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown curve: " + name);
}

bool meets(const std::string& a, const std::string& b) {
    const CurveY& A = lookup(a);
    const CurveY& B = lookup(b);
    if (A.mobile || B.mobile)
        throw std::invalid_argument("incidence undefined for general members");
    if (a == b) throw std::invalid_argument("incidence of a curve with itself");
    Rat p = pair(A.cls, B.cls);
    if (p != 0 && p != 1) throw std::logic_error("unexpected rigid incidence degree");
    return p == 1;
}

const std::vector<std::string>& branch_components(int i) {
    static const std::vector<std::string> b1 = {"e1", "h23", "h24", "t22"};
    static const std::vector<std::string> b2 = {"e2", "h13", "h34", "t33"};
    static const std::vector<std::string> b3 = {"e3", "h12", "h14", "t11"};
    switch (i) {
        case 1: return b1;
        case 2: return b2;
        case 3: return b3;
    }
    throw std::invalid_argument("branch index must be 1, 2 or 3");
}

DivClass branch_class(int i) {
    switch (i) {
        case 1: return DivClass(3, 1, -3, -1, -1);
        case 2: return DivClass(3, -1, 1, -3, -1);
        case 3: return DivClass(3, -3, -1, 1, -1);
    }
    throw std::invalid_argument("branch index must be 1, 2 or 3");
}

DivClass l_class(int i) {
    switch (i) {
        case 1: return DivClass(3, -2, 0, -1, -1);
        case 2: return DivClass(3, -1, -2, 0, -1);
        case 3: return DivClass(3, 0, -1, -2, -1);
    }
    throw std::invalid_argument("L index must be 1, 2 or 3");
}

bool BuildingDataReport::pass() const {
    for (int i = 0; i < 3; ++i)
        if (!class_identity[i] || !cover_relation[i]) return false;
    return adjoint_identity;
}

BuildingDataReport validate_building_data() { return validate_building_data({}); }

BuildingDataReport validate_building_data(
    const std::vector<std::pair<std::string, DivClass>>& overrides) {
    auto cls_of = [&](const std::string& n) {
        for (const auto& [name, cls] : overrides)
            if (name == n) return cls;
        return lookup(n).cls;
    };
    BuildingDataReport r{};
    DivClass B[3];
    for (int i = 1; i <= 3; ++i) {
        DivClass sum;
        for (const auto& n : branch_components(i)) sum += cls_of(n);
        B[i - 1] = sum;
        r.class_identity[i - 1] = (sum == branch_class(i));
    }
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1, k = (i + 1) % 3 + 1;  // the other two indices
        r.cover_relation[i - 1] = (Rat(2) * l_class(i) == B[j - 1] + B[k - 1]);
    }
    DivClass Bsum = B[0] + B[1] + B[2];
    DivClass K = canonical_class();
    r.adjoint_identity = (Rat(2) * K + Bsum == Rat(-1) * K);
    return r;
}

}  // namespace bur5
