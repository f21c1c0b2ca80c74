#include <doctest.h>

#include <random>

#include "burniat5/linarith.hpp"
#include "oracles.hpp"

using namespace bur5;

TEST_CASE("tight strict pair is infeasible") {
    // {x <= 2, x > 2}
    LinSystem sys;
    sys.add(ge0(LinExpr(Rat(2)) - LinExpr::var(0)));
    sys.add(gt0(LinExpr::var(0) - LinExpr(Rat(2))));
    CHECK(sys.infeasible());
}

TEST_CASE("symbolic-n elimination") {
    // {n >= 2, 2n >= a - b + 3, 2n + a - b > 4n - 3} has no rational solution
    int n = 0, a = 1, b = 2;
    LinSystem sys;
    sys.add(ge0(LinExpr::var(n) - LinExpr(Rat(2))));
    sys.add(ge0(LinExpr::var(n, 2) - LinExpr::var(a) + LinExpr::var(b) - LinExpr(Rat(3))));
    sys.add(gt0(LinExpr::var(n, 2) + LinExpr::var(a) - LinExpr::var(b) -
                (LinExpr::var(n, 4) - LinExpr(Rat(3)))));
    CHECK(sys.infeasible());
}

TEST_CASE("witness satisfies the system") {
    LinSystem sys;
    sys.add(ge0(LinExpr::var(0) - LinExpr(Rat(1))));                       // x >= 1
    sys.add(gt0(LinExpr::var(1) - LinExpr::var(0)));                       // y > x
    sys.add(ge0(LinExpr(Rat(10)) - LinExpr::var(1) - LinExpr::var(0)));    // x + y <= 10
    sys.add(eq0(LinExpr::var(2) - LinExpr::var(0) - LinExpr::var(1)));     // z = x + y
    auto r = sys.solve();
    REQUIRE(r.feasible);
    for (const auto& c : sys.constraints()) {
        Rat v = c.e.eval(r.witness);
        switch (c.rel) {
            case Rel::Ge: CHECK(v >= 0); break;
            case Rel::Gt: CHECK(v > 0); break;
            case Rel::Eq: CHECK(v == 0); break;
        }
    }
}

TEST_CASE("entailment distinguishes strictness") {
    LinSystem sys;
    sys.add(ge0(LinExpr::var(0) - LinExpr(Rat(3))));  // x >= 3
    CHECK(sys.entails(ge0(LinExpr::var(0) - LinExpr(Rat(2)))));
    CHECK(sys.entails(gt0(LinExpr::var(0) - LinExpr(Rat(2)))));
    CHECK(!sys.entails(gt0(LinExpr::var(0) - LinExpr(Rat(3)))));
}

TEST_CASE("farkas validation") {
    LinSystem sys;
    sys.add(ge0(LinExpr::var(0) - LinExpr(Rat(1))));                    // 0: x - 1 >= 0
    sys.add(ge0(LinExpr::var(1) - LinExpr::var(0)));                    // 1: y - x >= 0
    sys.add(gt0(LinExpr(Rat(-2)) - LinExpr::var(1) + LinExpr::var(0))); // 2: x - y - 2 > 0
    // 1 * c1 + 1 * c2 gives -2 > 0
    CHECK(sys.check_farkas_infeasible({{Rat(1), 1}, {Rat(1), 2}}).empty());
    CHECK(!sys.check_farkas_infeasible({{Rat(1), 0}}).empty());
    // claim y >= 1 from c0 + c1
    CHECK(sys.check_farkas({{Rat(1), 0}, {Rat(1), 1}},
                           ge0(LinExpr::var(1) - LinExpr(Rat(1))))
              .empty());
    // negative multiplier on an inequality is rejected
    CHECK(!sys.check_farkas({{Rat(-1), 0}}, ge0(LinExpr(Rat(1)))).empty());
}

TEST_CASE("random systems agree with the simplex oracle") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> nvars(1, 8);
    std::uniform_int_distribution<int> ncons(1, 10);
    std::uniform_int_distribution<int> relpick(0, 5);
    int feasible_count = 0;
    for (int trial = 0; trial < 300; ++trial) {
        LinSystem sys;
        int nv = nvars(rng);
        int nc = ncons(rng);
        for (int i = 0; i < nc; ++i) {
            LinExpr e(Rat(coeff(rng)));
            for (int v = 0; v < nv; ++v) {
                int c = coeff(rng);
                if (c != 0) e += LinExpr::var(v, Rat(c));
            }
            int r = relpick(rng);
            if (r == 0)
                sys.add(eq0(e));
            else if (r <= 3)
                sys.add(ge0(e));
            else
                sys.add(gt0(e));
        }
        auto fm = sys.solve();
        bool oracle = oracle::feasible_simplex(sys);
        CAPTURE(trial);
        REQUIRE(fm.feasible == oracle);
        if (fm.feasible) {
            ++feasible_count;
            for (const auto& c : sys.constraints()) {
                Rat v = c.e.eval(fm.witness);
                if (c.rel == Rel::Ge) REQUIRE(v >= 0);
                if (c.rel == Rel::Gt) REQUIRE(v > 0);
                if (c.rel == Rel::Eq) REQUIRE(v == 0);
            }
        }
    }
    CHECK(feasible_count > 0);
    CHECK(feasible_count < 300);
}
