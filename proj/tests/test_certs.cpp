#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "burniat5/checker.hpp"
#include "burniat5/picard.hpp"

using namespace bur5;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string cert_path(const std::string& id) {
    return std::string(BURNIAT5_CERT_DIR) + "/" + id + ".cert";
}

const char* kCase24 = R"((certificate "thm1-case2.4"
  (domain) (threshold 4)
  (locus (in T33))
  (decompose D (class 2K)
    (term a33 T33 (>= a33 0))
    (residual Omega (exclude T33)))
  (step ixn D (pull t2) 8)
  (step ixnval T33 (pull t2) 2)
  (step adjunction T33 (conclude global))
  (step ixnval T33 D 4)
  (step ixnval T33 T33 0)
  (step contradiction)))";

}  // namespace

TEST_CASE("round trip of the shipped T33 certificate") {
    Certificate c = parse_certificate(slurp(cert_path("thm1-case2.4")));
    CHECK(c.id == "thm1-case2.4");
    CHECK(c.theorem == Theorem::Thm1);
    REQUIRE(c.decomp.has_value());
    CHECK(c.decomp->terms.size() == 1);  // one variable
    CHECK(c.steps.size() == 6);          // six steps
    CHECK(check_certificate(c).valid);
}

TEST_CASE("parse errors carry positions") {
    std::string bad = kCase24;
    auto pos = bad.find("T33");
    bad.replace(pos, 3, "E5 ");
    try {
        parse_certificate(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown curve") != std::string::npos);
        CHECK(e.line > 0);
    }

    try {
        parse_certificate(R"((certificate "thm1-empty" (domain) (threshold 4) (locus)))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("certificate proves nothing") != std::string::npos);
    }
}

TEST_CASE("an edited intersection identity is rejected at that step") {
    std::string text = kCase24;
    auto pos = text.find("(step ixn D (pull t2) 8)");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("(step ixn D (pull t2) 8)").size(),
                 "(step ixn D (pull t2) 9)");
    Verdict v = check_certificate(parse_certificate(text));
    CHECK(!v.valid);
    CHECK(v.step_index == 1);
    CHECK(v.reason.find("intersection identity fails") != std::string::npos);
}

TEST_CASE("guard discipline: removing the guard premise stops the adjunction") {
    std::string text = R"((certificate "thm1-case2.1"
      (domain) (threshold 4)
      (locus (in E3) (out H13))
      (decompose D (class 2K)
        (term a3 E3 (>= a3 0))
        (term a13 H13 (>= a13 0))
        (residual Omega (exclude E3 H13)))
      (step adjunction E3 (sub a13) (conclude global))
      (step ixn D H13 2)
      (step contradiction)))";
    Verdict v = check_certificate(parse_certificate(text));
    CHECK(!v.valid);
    CHECK(v.step_index == 1);
    CHECK(v.reason.find("guard") != std::string::npos);
}

TEST_CASE("a failing contradiction reports a witness") {
    std::string text = R"((certificate "thm1-feasible"
      (domain) (threshold 4)
      (locus (in E3) (out H13))
      (decompose D (class 2K)
        (term a3 E3 (>= a3 0))
        (term a13 H13 (>= a13 0))
        (residual Omega (exclude E3 H13)))
      (step ixn D (pull t3) 8)
      (step ixn D H13 2)
      (step contradiction)))";
    Verdict v = check_certificate(parse_certificate(text));
    CHECK(!v.valid);
    CHECK(v.reason.find("satisfiable") != std::string::npos);
}

TEST_CASE("the multiplicity axiom is licensed once") {
    std::string text = R"((certificate "thm1-mult"
      (domain) (threshold 4)
      (locus (offbranch))
      (step mult-axiom)
      (step mult-axiom)
      (step contradiction)))";
    Verdict v = check_certificate(parse_certificate(text));
    CHECK(!v.valid);
    CHECK(v.step_index == 2);
    CHECK(v.reason.find("already used") != std::string::npos);
}

TEST_CASE("case split coverage is verified over the integers") {
    std::string covered = R"((certificate "thm2-anti-split"
      (domain (>= n 2) (<= n 5/2))
      (threshold (- (* 4 n) 3))
      (locus (offbranch))
      (step pushforward)
      (step casesplit n
        (branch ((<= n 9/4) (>= n 2)) (step glct del-pezzo))
        (branch ((>= n 5/2)) (step glct del-pezzo)))))";
    // the uncovered gap (9/4, 5/2) holds no integer, so the split is licensed
    CHECK(check_certificate(parse_certificate(covered)).valid);

    std::string gap = R"((certificate "thm2-anti-split"
      (domain (>= n 2))
      (threshold (- (* 4 n) 3))
      (locus (offbranch))
      (step pushforward)
      (step casesplit n
        (branch ((<= n 5/2)) (step glct del-pezzo))
        (branch ((>= n 7/2)) (step glct del-pezzo)))))";
    // the gap (5/2, 7/2) contains n = 3
    Verdict v = check_certificate(parse_certificate(gap));
    CHECK(!v.valid);
    CHECK(v.reason.find("gap") != std::string::npos);

    std::string tail = R"((certificate "thm2-anti-split"
      (domain (>= n 2))
      (threshold (- (* 4 n) 3))
      (locus (offbranch))
      (step pushforward)
      (step casesplit n
        (branch ((<= n 100)) (step glct del-pezzo)))))";
    Verdict vt = check_certificate(parse_certificate(tail));
    CHECK(!vt.valid);  // the unbounded upper tail is uncovered
}

TEST_CASE("threshold must match the certified theorem") {
    std::string text = kCase24;
    auto pos = text.find("(threshold 4)");
    text.replace(pos, std::string("(threshold 4)").size(), "(threshold 5)");
    Verdict v = check_certificate(parse_certificate(text));
    CHECK(!v.valid);
    CHECK(v.reason.find("threshold") != std::string::npos);
}

TEST_CASE("farkas-backed linear steps") {
    // same contradiction as case 2.1 but with explicit multipliers:
    // store: 0: a3 >= 0, 1: a13 >= 0, 2: 8 - 2 a3 >= 0,
    //        3: a3 - a13 - 2 > 0 (adjunction), 4: 2 - a3 + a13 >= 0 (ixn)
    std::string text = R"((certificate "thm1-case2.1"
      (domain) (threshold 4)
      (locus (in E3) (out H13))
      (decompose D (class 2K)
        (term a3 E3 (>= a3 0))
        (term a13 H13 (>= a13 0))
        (residual Omega (exclude E3 H13)))
      (step ixn D (pull t3) 8)
      (step adjunction E3 (sub a13) (conclude global))
      (step ixn D H13 2)
      (step linear (> a3 (+ a13 2)) (farkas (1 3)))
      (step contradiction (farkas (1 3) (1 4)))))";
    CHECK(check_certificate(parse_certificate(text)).valid);

    std::string bad = text;
    bad.replace(bad.find("(farkas (1 3) (1 4))"), std::string("(farkas (1 3) (1 4))").size(),
                "(farkas (1 2) (1 4))");
    Verdict v = check_certificate(parse_certificate(bad));
    CHECK(!v.valid);
    CHECK(v.step_index == 5);
}

TEST_CASE("shipped corpus checks VALID and survives spot instantiation") {
    namespace fs = std::filesystem;
    int count = 0;
    for (const auto& e : fs::directory_iterator(BURNIAT5_CERT_DIR)) {
        if (e.path().extension() != ".cert") continue;
        ++count;
        Certificate c = parse_certificate_file(e.path().string());
        Verdict v = check_certificate(c);
        CAPTURE(c.id);
        CAPTURE(v.reason);
        CHECK(v.valid);
        // quick sweep at the low end of the domain; the full sweep to 25 runs
        // in the acceptance suite
        auto bad = instantiation_sweep(c, 5);
        if (bad) {
            CAPTURE(bad->first);
            CAPTURE(bad->second.reason);
            CHECK(false);
        }
    }
    CHECK(count >= 37);
}

TEST_CASE("the product-bound certificates really use the nonlinear machinery") {
    Certificate c11 = parse_certificate_file(cert_path("thm3-anti-case11"));
    bool has_jz = false, has_split = false;
    for (const auto& s : c11.steps) {
        if (s.kind == Step::Kind::JiangZou) has_jz = true;
        if (s.kind == Step::Kind::CaseSplit) has_split = true;
    }
    CHECK(has_jz);
    CHECK(has_split);
    CHECK(check_certificate(c11).valid);
}

TEST_CASE("the internal glct bound cannot justify its own certificates") {
    std::string text = R"((certificate "thm1-circular"
      (domain) (threshold 4)
      (locus (offbranch))
      (step glct theorem-1)))";
    Verdict v = check_certificate(parse_certificate(text));
    CHECK(!v.valid);
    CHECK(v.reason.find("its own") != std::string::npos);
}

TEST_CASE("gram matrix of the basis has the (1,4) sign pattern") {
    DivClass basis[5];
    for (int i = 0; i < 5; ++i) basis[i].c[i] = 1;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            Rat expected = i != j ? Rat(0) : (i == 0 ? Rat(1) : Rat(-1));
            CHECK(pair(basis[i], basis[j]) == expected);
        }
}

// adversarial certificates: each one attacks a rule guard and must be refused
TEST_CASE("rule guards refuse unsound certificates") {
    auto invalid_with = [](const std::string& text, const std::string& needle) {
        Verdict v = check_certificate(parse_certificate(text));
        CAPTURE(text);
        CAPTURE(v.reason);
        CHECK(!v.valid);
        CHECK(v.reason.find(needle) != std::string::npos);
    };

    // disjoint curves cannot both contain the point
    invalid_with(R"((certificate "thm1-bad"
      (domain) (threshold 4)
      (locus (in E1) (in E2))
      (decompose D (class 2K)
        (term a1 E1 (>= a1 0))
        (residual Omega (exclude E1)))
      (step ixn D (pull t1) 8)
      (step contradiction)))",
                 "disjoint");

    // the residual cannot be bounded against a negative curve off the
    // exclusion set
    invalid_with(R"((certificate "thm1-bad"
      (domain) (threshold 4)
      (locus (in T33))
      (decompose D (class 2K)
        (term a33 T33 (>= a33 0))
        (residual Omega (exclude T33)))
      (step ixn D E1 2)
      (step contradiction)))",
                 "cannot bound the residual");

    // subtracting a term whose curve passes through the point
    invalid_with(R"((certificate "thm1-bad"
      (domain) (threshold 4)
      (locus (in E3) (in H13))
      (decompose D (class 2K)
        (term a3 E3 (>= a3 0))
        (term a13 H13 (>= a13 0))
        (residual Omega (exclude E3 H13)))
      (step ixn D (pull t3) 8)
      (step adjunction E3 (sub a13) (conclude global))
      (step contradiction)))",
                 "may pass through the point");

    // adjunction on a curve that is not known to contain the point
    invalid_with(R"((certificate "thm1-bad"
      (domain) (threshold 4)
      (locus (in E3))
      (decompose D (class 2K)
        (term a3 E3 (>= a3 0))
        (term a13 H13 (>= a13 0))
        (residual Omega (exclude E3 H13)))
      (step ixn D (pull t2) 8)
      (step adjunction H13 (conclude global))
      (step contradiction)))",
                 "not in the point locus");

    // dropping a fixed component that may pass through the point
    invalid_with(R"((certificate "thm2-anti-bad"
      (domain (>= n 2)) (threshold (- (* 4 n) 3))
      (locus (in H14) (out E1))
      (decompose Dp (class (- (scale n -KY) L1))
        (term a14 H14 (>= a14 0))
        (term a1 E1 (>= a1 0))
        (residual Omega (exclude H14 E1)))
      (step ixn Dp (pull t3) (- (* 8 n) 8))
      (step adjunction H14 (sub a1) (conclude global))
      (step contradiction)))",
                 "dropped fixed component");

    // multiplying by a factor of unknown sign
    invalid_with(R"((certificate "thm3-anti-bad"
      (domain (>= n 1)) (threshold (* 4 n))
      (locus (in H34) (in T22))
      (decompose D (class (mKX (+ (* 2 n) 1)))
        (term a1 E1 (>= a1 1))
        (term a12 H12 (>= a12 0))
        (term a34 H34 (>= a34 0))
        (term a22 T22 (>= a22 1))
        (residual Omega (exclude E1 H12 H34 T22)))
      (step ixn D (pull t1) (+ (* 8 n) 4))
      (step product z a12 a34)
      (step mulineq (premise (>= a22 1)) (factor (- a12 5)))
      (step contradiction)))",
                 "factor not entailed nonnegative");

    // an intersection bound below the exact bilinear value
    invalid_with(R"((certificate "thm3-anti-bad"
      (domain (>= n 1)) (threshold (* 4 n))
      (locus (in H34) (in T22))
      (decompose D (class (mKX (+ (* 2 n) 1)))
        (term a1 E1 (>= a1 1))
        (term a12 H12 (>= a12 0))
        (term a34 H34 (>= a34 0))
        (term a22 T22 (>= a22 1))
        (residual Omega (exclude E1 H12 H34 T22)))
      (step ixn D (pull t1) (+ (* 8 n) 4))
      (step adjunction H34 (sub a1 a12) (conclude mult))
      (step product zna22 n a22)
      (step product zna34 n a34)
      (step jiangzou (bprime a22 a34) (cside Omega)
            (mlow (+ a22 a34)) (mhigh (+ a22 a34))
            (ibound (* n a22)))
      (step contradiction)))",
                 "below the exact value");

    // downstairs arithmetic before the pushforward step
    invalid_with(R"((certificate "thm3-anti-bad"
      (domain (>= n 1)) (threshold (* 4 n))
      (locus (in T22) (out E2) (out H13) (out H14) (out H34) (out T11) (out T33))
      (decompose d (class (scale (+ n 1/2) -KY))
        (term b22 t22 (>= b22 0))
        (residual Omega (exclude t22)))
      (step ixn d t1 (+ (* 2 n) 1))
      (step contradiction)))",
                 "pushforward");

    // a base-threshold closure with the point sitting on the branch locus
    invalid_with(R"((certificate "thm1-bad"
      (domain) (threshold 4)
      (locus (in T33))
      (step pushforward)
      (step glct del-pezzo)))",
                 "avoid the branch locus");
}
