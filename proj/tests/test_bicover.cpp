#include <doctest.h>

#include <random>

#include "burniat5/bicover.hpp"

using namespace bur5;

TEST_CASE("upstairs catalog") {
    CHECK(catalog_x().size() == 13);
    CHECK(lookup_x("E4t").ram == 1);
    CHECK(lookup_x("E1").ram == 2);
    CHECK(halfclass(lookup_x("T33")) == Rat(1, 2) * lookup("t33").cls);
    CHECK_THROWS(lookup_x("E5"));
}

TEST_CASE("the full intersection table of the canonical class") {
    DivClass kx = halfclass_kx();
    for (const auto& n : {"E1", "E2", "E3"}) CHECK(ixn(kx, halfclass(lookup_x(n))) == 1);
    CHECK(ixn(kx, halfclass(lookup_x("E4t"))) == 2);
    CHECK(ixn(kx, lookup("l").cls) == 6);
    for (const auto& n : {"t1", "t2", "t3", "t4"}) CHECK(ixn(kx, lookup(n).cls) == 4);
    for (const auto& n : {"H12", "H13", "H14", "H23", "H24", "H34"})
        CHECK(ixn(kx, halfclass(lookup_x(n))) == 1);
    for (const auto& n : {"T11", "T22", "T33"}) CHECK(ixn(kx, halfclass(lookup_x(n))) == 2);
}

TEST_CASE("assorted intersection numbers") {
    CHECK(ixn_curves("H24", "H24") == -1);
    CHECK(ixn(halfclass(lookup_x("T33")), lookup("t2").cls) == 2);
    CHECK(ixn_curves("E4t", "E4t") == -4);
    CHECK(ixn_curves("H14", "E4t") == 2);
    CHECK(ixn_curves("T22", "T33") == 1);
    CHECK(ixn(halfclass_kx(), halfclass_kx()) == 5);
}

TEST_CASE("projection formula") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int i = 0; i < 300; ++i) {
        DivClass a(d(rng), d(rng), d(rng), d(rng), d(rng));
        DivClass b(d(rng), d(rng), d(rng), d(rng), d(rng));
        CHECK(ixn(halfclass_pull(a), halfclass_pull(b)) == 4 * pair(a, b));
    }
}

TEST_CASE("invariants of the cover") {
    Invariants inv = invariants();
    CHECK(inv.k2 == 5);
    CHECK(inv.pg == 0);
    CHECK(inv.chi == 1);
    CHECK(inv.q == 0);
}

TEST_CASE("eigen systems") {
    EigenSystem e41 = eigen_system(4, 1);
    CHECK(e41.mobile == DivClass(3, 0, -2, -1, -1));
    CHECK(e41.fixed.size() == 8);
    CHECK(eigen_system(2, 1).dim == 0);
    CHECK(eigen_system(2, 2).dim == 0);
    CHECK(eigen_system(2, 3).dim == 0);
    EigenSystem e30 = eigen_system(3, 0);
    CHECK(e30.mobile == DivClass());
    CHECK(e30.dim == 1);
    CHECK(e30.fixed.size() == 12);
    // the anti-invariant even parts open up exactly at n = 2
    for (long n = 1; n <= 12; ++n)
        for (int i = 1; i <= 3; ++i)
            CHECK((eigen_system(2 * n, i).dim == 0) == (n == 1));
}

TEST_CASE("plurigenus identity") {
    CHECK(plurigenus(2) == 6);
    CHECK(plurigenus(3) == 16);
    CHECK(plurigenus(4) == 31);
    for (int m = 2; m <= 12; ++m) CHECK(plurigenus(m) == 1 + 5 * m * (m - 1) / 2);
}

TEST_CASE("class of a member and membership") {
    // phi^*(2 h13 + e3 + e1 + h24) = 4 H13 + 2 E3 + 2 E1 + 2 H24 ~ 2K_X
    QDivisorX e;
    e.add("H13", 4).add("E3", 2).add("E1", 2).add("H24", 2);
    CHECK(class_of(e) == DivClass(3, -1, -1, -1, -1));
    CHECK(is_member(e, 2, 0));

    QDivisorX lone;
    lone.add("E1", 1);
    CHECK(!is_member(lone, 2, 0));

    // the even anti-invariant witness at n = 2 lies in |4K|_1
    QDivisorX d1;
    for (int i : {2, 3})
        for (const auto& c : r_components(i)) d1.add(c, 1);
    d1.add("H12", 4).add("H34", 2).add("E1", 4).add("E2", 0);
    CHECK(class_of(d1) == Rat(2) * DivClass(3, -1, -1, -1, -1));
    CHECK(is_member(d1, 4, 1));
    CHECK(!is_member(d1, 4, 2));  // wrong fixed part

    QDivisorX sym;
    sym.has_residual = true;
    CHECK_THROWS_WITH(class_of(sym), "use bound operations for symbolic divisors");
}
