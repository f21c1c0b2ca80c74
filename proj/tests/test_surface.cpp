#include <doctest.h>

#include <set>

#include "burniat5/surface.hpp"

using namespace bur5;

TEST_CASE("catalog size and lookups") {
    CHECK(catalog().size() == 18);
    CHECK(lookup("h13").cls == DivClass(1, -1, 0, -1, 0));
    CHECK(lookup("t33").branch == Branch::B2);
    CHECK(lookup("e4").branch == Branch::none);
    CHECK(lookup("t11").cls == lookup("t1").cls);
    CHECK(lookup("l").mobile);
    CHECK(lookup("t2").mobile);
    CHECK(!lookup("t22").mobile);
    CHECK_THROWS(lookup("e5"));
}

TEST_CASE("incidence examples") {
    CHECK(meets("e3", "h13"));
    CHECK(!meets("e1", "e2"));
    CHECK(!meets("t11", "e4"));
    CHECK(meets("t11", "e1"));
    CHECK(meets("t11", "t22"));           // distinct general lines meet once
    CHECK(!meets("t11", "h12"));          // separated over the blown-up point
    CHECK(meets("h12", "h34"));
    CHECK(!meets("h12", "h13"));
    CHECK_THROWS_WITH(meets("t1", "e1"), "incidence undefined for general members");
}

TEST_CASE("incidence table invariants") {
    std::vector<std::string> rigid;
    for (const auto& c : catalog())
        if (!c.mobile) rigid.push_back(c.name);
    for (const auto& a : rigid)
        for (const auto& b : rigid) {
            if (a == b) continue;
            CHECK(meets(a, b) == meets(b, a));
            if (meets(a, b)) {
                // transversal single-point crossing
                CHECK(pair(lookup(a).cls, lookup(b).cls) == 1);
                // curves of one branch divisor never cross each other
                Branch ba = lookup(a).branch, bb = lookup(b).branch;
                if (ba != Branch::none && bb != Branch::none) CHECK(ba != bb);
            }
        }
}

TEST_CASE("t_ii neighbourhoods match the configuration") {
    // t11 meets exactly e1, the h_jk avoiding index 1, and the other t_jj
    std::set<std::string> expected = {"e1", "h23", "h24", "h34", "t22", "t33"};
    std::set<std::string> got;
    for (const auto& c : catalog()) {
        if (c.mobile || c.name == "t11") continue;
        if (meets("t11", c.name)) got.insert(c.name);
    }
    CHECK(got == expected);
}

TEST_CASE("building data") {
    BuildingDataReport r = validate_building_data();
    for (int i = 0; i < 3; ++i) {
        CHECK(r.class_identity[i]);
        CHECK(r.cover_relation[i]);
    }
    CHECK(r.adjoint_identity);
    CHECK(r.pass());
    CHECK(branch_class(1) == DivClass(3, 1, -3, -1, -1));
    // explicit cover relation for i = 1
    CHECK(Rat(2) * l_class(1) == branch_class(2) + branch_class(3));
}

TEST_CASE("corrupted catalog fails the checks") {
    std::vector<std::pair<std::string, DivClass>> bad = {
        {"h23", DivClass(1, -1, -1, 0, 0)}};  // h23 replaced by h12's class
    BuildingDataReport r = validate_building_data(bad);
    CHECK(!r.pass());
}
