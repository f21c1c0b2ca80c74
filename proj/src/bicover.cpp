#include "burniat5/bicover.hpp"

#include <stdexcept>

namespace bur5 {

namespace {

std::vector<CurveX> build_catalog_x() {
    std::vector<CurveX> v;
    v.push_back({"E1", "e1", 2});
    v.push_back({"E2", "e2", 2});
    v.push_back({"E3", "e3", 2});
    v.push_back({"E4t", "e4", 1});  // e4 is off the branch locus
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            std::string ij = std::to_string(i) + std::to_string(j);
            v.push_back({"H" + ij, "h" + ij, 2});
        }
    v.push_back({"T11", "t11", 2});
    v.push_back({"T22", "t22", 2});
    v.push_back({"T33", "t33", 2});
    for (const auto& c : v) {
        bool in_branch = lookup(c.down).branch != Branch::none;
        if (in_branch != (c.ram == 2))
            throw std::logic_error("ramification flag disagrees with branch data");
    }
    return v;
}

}  // namespace

const std::vector<CurveX>& catalog_x() {
    static const std::vector<CurveX> v = build_catalog_x();
    return v;
}

bool has_curve_x(const std::string& name) {
    for (const auto& c : catalog_x())
        if (c.name == name) return true;
    return false;
}

const CurveX& lookup_x(const std::string& name) {
    for (const auto& c : catalog_x())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown curve: " + name);
}

DivClass halfclass(const CurveX& c) { return Rat(1, c.ram) * lookup(c.down).cls; }

DivClass halfclass_kx() { return Rat(-1, 2) * canonical_class(); }

DivClass halfclass_pull(const DivClass& c) { return c; }

Rat ixn(const DivClass& a, const DivClass& b) { return 4 * pair(a, b); }

Rat ixn_curves(const std::string& a, const std::string& b) {
    return ixn(halfclass(lookup_x(a)), halfclass(lookup_x(b)));
}

const std::vector<std::string>& r_components(int i) {
    static const std::vector<std::string> r1 = {"E1", "H23", "H24", "T22"};
    static const std::vector<std::string> r2 = {"E2", "H13", "H34", "T33"};
    static const std::vector<std::string> r3 = {"E3", "H12", "H14", "T11"};
    switch (i) {
        case 1: return r1;
        case 2: return r2;
        case 3: return r3;
    }
    throw std::invalid_argument("ramification index must be 1, 2 or 3");
}

std::vector<std::string> r_all() {
    std::vector<std::string> all;
    for (int i = 1; i <= 3; ++i)
        for (const auto& n : r_components(i)) all.push_back(n);
    return all;
}

Invariants invariants() {
    Invariants inv;
    DivClass K = canonical_class();
    inv.k2 = pair(Rat(-1) * K, Rat(-1) * K);
    long pg = h0(K);  // p_g(Y) = 0, computed rather than assumed
    Rat chi = 4;      // 4 chi(O_Y)
    for (int i = 1; i <= 3; ++i) {
        DivClass Li = l_class(i);
        pg += h0(Li + K);
        chi += pair(Li, Li + K) / 2;
    }
    inv.pg = pg;
    inv.chi = chi;
    Rat q = 1 + Rat(pg) - chi;
    if (!is_integer(q)) throw std::logic_error("q is not an integer");
    inv.q = (long)numerator(q);
    return inv;
}

QDivisorX& QDivisorX::add(const std::string& name, Rat c) {
    if (c == 0) return *this;
    auto it = coeffs.find(name);
    if (it == coeffs.end())
        coeffs[name] = std::move(c);
    else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
    return *this;
}

DivClass class_of(const QDivisorX& d) {
    if (d.has_residual)
        throw std::invalid_argument("use bound operations for symbolic divisors");
    DivClass sum;
    for (const auto& [name, c] : d.coeffs) sum += c * halfclass(lookup_x(name));
    return sum;
}

Rat ixn_div(const QDivisorX& a, const QDivisorX& b) {
    return ixn(class_of(a), class_of(b));
}

EigenSystem eigen_system(int m, int i) {
    if (m < 1) throw std::invalid_argument("eigen_system requires m >= 1");
    if (i < 0 || i > 3) throw std::invalid_argument("eigen index must be 0..3");
    EigenSystem es;
    es.m = m;
    es.i = i;
    DivClass mK = Rat(-1) * canonical_class();
    if (m % 2 == 0) {
        int n = m / 2;
        // |2n K|_0 = phi^* |n(2K+B)| with 2K+B = -K; the anti-invariant parts
        // carry the fixed divisor R_j + R_k.
        if (i == 0) {
            es.mobile = Rat(n) * mK;
        } else {
            int j = i % 3 + 1, k = (i + 1) % 3 + 1;
            for (const auto& c : r_components(j)) es.fixed.push_back(c);
            for (const auto& c : r_components(k)) es.fixed.push_back(c);
            es.mobile = Rat(n) * mK - l_class(i);
        }
    } else {
        int n = (m - 1) / 2;
        // (2n+1)K + nB = (n-1)(-K).
        if (i == 0) {
            es.fixed = r_all();
            es.mobile = Rat(n - 1) * mK;
        } else {
            for (const auto& c : r_components(i)) es.fixed.push_back(c);
            es.mobile = Rat(n - 1) * mK + l_class(i);
        }
    }
    es.dim = h0(es.mobile);
    return es;
}

long plurigenus(int m) {
    if (m < 2) throw std::invalid_argument("plurigenus requires m >= 2");
    long total = 0;
    for (int i = 0; i <= 3; ++i) total += eigen_system(m, i).dim;
    return total;
}

bool is_member(const QDivisorX& d, int m, int i) {
    EigenSystem es = eigen_system(m, i);
    DivClass target = Rat(m, 2) * (Rat(-1) * canonical_class());
    if (!(class_of(d) == target)) return false;
    for (const auto& f : es.fixed) {
        auto it = d.coeffs.find(f);
        if (it == d.coeffs.end() || it->second < 1) return false;
    }
    return true;
}

}  // namespace bur5
