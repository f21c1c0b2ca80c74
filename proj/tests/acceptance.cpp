// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance here is exact equality over the rationals.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <vector>

#include "burniat5/checker.hpp"
#include "burniat5/divexpr.hpp"
#include "burniat5/lct.hpp"
#include "oracles.hpp"

using namespace bur5;
namespace fs = std::filesystem;

namespace {

int failures = 0;

struct Criterion {
    int id;
    std::string label;
    bool ok = true;
    std::string detail;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double budget_ms = -1;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }
    ~Criterion() {
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (budget_ms > 0 && ms > budget_ms) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
        }
        std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << label << " ("
                  << (long)ms << " ms)";
        if (!ok) std::cout << "  -- " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

std::vector<Certificate> load_corpus() {
    std::vector<Certificate> out;
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(BURNIAT5_CERT_DIR))
        if (e.path().extension() == ".cert") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) out.push_back(parse_certificate_file(p));
    return out;
}

}  // namespace

int main() {
    {
        Criterion c{1, "invariant reproduction: K^2, p_g, chi, q and the intersection table"};
        c.budget_ms = 1000;
        Invariants inv = invariants();
        c.expect(inv.k2 == 5, "K^2 != 5");
        c.expect(inv.pg == 0, "p_g != 0");
        c.expect(inv.chi == 1, "chi != 1");
        c.expect(inv.q == 0, "q != 0");
        DivClass kx = halfclass_kx();
        for (const auto& n : {"E1", "E2", "E3"})
            c.expect(ixn(kx, halfclass(lookup_x(n))) == 1, std::string("K.") + n);
        c.expect(ixn(kx, halfclass(lookup_x("E4t"))) == 2, "K.E4t");
        c.expect(ixn(kx, lookup("l").cls) == 6, "K.pull(l)");
        for (const auto& n : {"t1", "t2", "t3", "t4"})
            c.expect(ixn(kx, lookup(n).cls) == 4, std::string("K.pull(") + n + ")");
        for (const auto& n : {"H12", "H13", "H14", "H23", "H24", "H34"})
            c.expect(ixn(kx, halfclass(lookup_x(n))) == 1, std::string("K.") + n);
        for (const auto& n : {"T11", "T22", "T33"})
            c.expect(ixn(kx, halfclass(lookup_x(n))) == 2, std::string("K.") + n);
    }

    {
        Criterion c{2, "building data: component classes, 2L_i = B_j + B_k, 2K_Y + B = -K_Y"};
        BuildingDataReport r = validate_building_data();
        for (int i = 0; i < 3; ++i) {
            c.expect(r.class_identity[i], "class identity " + std::to_string(i + 1));
            c.expect(r.cover_relation[i], "cover relation " + std::to_string(i + 1));
        }
        c.expect(r.adjoint_identity, "adjoint identity");
    }

    {
        Criterion c{3, "glct upper bound 1/4 at coefficient bound 4, derived K bound 1/2"};
        c.budget_ms = 30000;
        DivClass target(3, -1, -1, -1, -1);
        GlctUpperResult r = glct_upper_search(target, 4);
        c.expect(r.bound == Rat(1, 4), "bound != 1/4");
        c.expect(2 * r.bound == Rat(1, 2), "derived K bound != 1/2");
        DivClass sum;
        for (const auto& [name, k] : r.witness) sum += Rat(k) * lookup(name).cls;
        c.expect(sum == target, "witness does not decompose the target");
        c.expect(*lct_divisor(r.witness_pullback).value == Rat(1, 4), "witness lct != 1/4");
        // the quadruple-line-plus-three pattern, up to symmetry: coefficient
        // multiset {2,1,1,1} and a (4,2)-crossing in the pullback
        std::multiset<long> pattern;
        for (const auto& [name, k] : r.witness)
            if (k != 0) pattern.insert(k);
        c.expect(pattern == std::multiset<long>{1, 1, 1, 2}, "witness coefficient pattern");
        bool has42 = false;
        for (const auto& [a, ca] : r.witness_pullback.coeffs)
            for (const auto& [b, cb] : r.witness_pullback.coeffs)
                if (a != b && ixn_curves(a, b) > 0 && ca == 4 && cb == 2) has42 = true;
        c.expect(has42, "no (4,2) crossing in the pullback");
        // the explicitly shipped representative attains the bound too
        QDivisorX e = parse_divisor("4*H13 + 2*E3 + 2*E1 + 2*H24");
        c.expect(is_member(e, 2, 0), "4*H13+2*E3+2*E1+2*H24 not in |2K|_0");
        c.expect(*lct_divisor(e).value == r.bound, "representative misses the bound");
    }

    {
        Criterion c{4, "witness lct closed forms 1/(4n-3), 1/(4n-3), 1/(4n)"};
        for (long n = 2; n <= 10; ++n)
            c.expect(*lct_divisor(witness_even_anti(n)).value == Rat(1, 4 * n - 3),
                     "even anti witness at n=" + std::to_string(n));
        for (long n = 1; n <= 10; ++n) {
            c.expect(*lct_divisor(witness_odd_inv(n)).value == Rat(1, 4 * n - 3),
                     "odd invariant witness at n=" + std::to_string(n));
            c.expect(*lct_divisor(witness_odd_anti(n)).value == Rat(1, 4 * n),
                     "odd anti witness at n=" + std::to_string(n));
        }
    }

    std::vector<Certificate> corpus = load_corpus();

    {
        Criterion c{5, "certificate corpus valid, symbolically and at every n <= 25"};
        c.budget_ms = 60000;
        c.expect(corpus.size() >= 37,
                 "corpus too small: " + std::to_string(corpus.size()));
        for (const auto& cert : corpus) {
            Verdict v = check_certificate(cert);
            c.expect(v.valid, cert.id + ": " + v.reason);
            auto bad = instantiation_sweep(cert, 25);
            if (bad)
                c.expect(false, cert.id + " at n=" + std::to_string(bad->first) + ": " +
                                    bad->second.reason);
        }
    }

    {
        Criterion c{6, "mutation soundness: every +-1 constant perturbation is INVALID"};
        long mutants = 0;
        for (const auto& cert : corpus) {
            MutationReport r = mutate_and_check(cert);
            mutants += r.mutants;
            c.expect(r.rejected == r.mutants,
                     cert.id + ": " + std::to_string(r.mutants - r.rejected) +
                         " mutants accepted");
        }
        c.expect(mutants > 0, "no mutation sites found");
    }

    {
        Criterion c{7, "plurigenus identity for m = 2..12 and empty m = 2 anti parts"};
        for (int m = 2; m <= 12; ++m)
            c.expect(plurigenus(m) == 1 + 5 * m * (m - 1) / 2, "m=" + std::to_string(m));
        for (int i = 1; i <= 3; ++i)
            c.expect(eigen_system(2, i).dim == 0, "|2K|_" + std::to_string(i));
    }

    {
        Criterion c{8, "randomized agreement: effectivity routes, projection formula, FM"};
        std::mt19937_64 rng(20260810);
        std::uniform_int_distribution<long> d10(-10, 10), d5(-5, 5);
        for (int i = 0; i < 1000; ++i) {
            DivClass cl(d10(rng), d10(rng), d10(rng), d10(rng), d10(rng));
            if (is_effective(cl) != is_effective_reduction(cl)) {
                c.expect(false, "effectivity disagreement at " + cl.str());
                break;
            }
        }
        for (int i = 0; i < 1000; ++i) {
            DivClass a(d5(rng), d5(rng), d5(rng), d5(rng), d5(rng));
            DivClass b(d5(rng), d5(rng), d5(rng), d5(rng), d5(rng));
            if (ixn(halfclass_pull(a), halfclass_pull(b)) != 4 * pair(a, b)) {
                c.expect(false, "projection formula fails at " + a.str());
                break;
            }
        }
        std::uniform_int_distribution<int> coeff(-9, 9), nvars(1, 8), ncons(1, 10),
            relpick(0, 5);
        for (int trial = 0; trial < 1000; ++trial) {
            LinSystem sys;
            int nv = nvars(rng), nc = ncons(rng);
            for (int i = 0; i < nc; ++i) {
                LinExpr e(Rat(coeff(rng)));
                for (int v = 0; v < nv; ++v) {
                    int q = coeff(rng);
                    if (q != 0) e += LinExpr::var(v, Rat(q));
                }
                int r = relpick(rng);
                if (r == 0)
                    sys.add(eq0(e));
                else if (r <= 3)
                    sys.add(ge0(e));
                else
                    sys.add(gt0(e));
            }
            if (sys.solve().feasible != oracle::feasible_simplex(sys)) {
                c.expect(false, "FM/simplex disagreement at trial " + std::to_string(trial));
                break;
            }
        }
    }

    return failures == 0 ? 0 : 1;
}
