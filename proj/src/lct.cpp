#include "burniat5/lct.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bur5 {

std::optional<Rat> lct_local(const std::vector<Rat>& coeffs) {
    if (coeffs.empty() || coeffs.size() > 2)
        throw std::invalid_argument("local model takes 1 or 2 branches");
    Rat mx = 0;
    for (const auto& c : coeffs) {
        if (c < 0) throw std::invalid_argument("negative branch coefficient");
        mx = std::max(mx, c);
    }
    if (mx == 0) return std::nullopt;
    return Rat(1) / mx;
}

std::string LctResult::point_str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i) s += ", ";
        s += point[i];
    }
    return s + ")";
}

namespace {

bool better(const std::optional<Rat>& v, const std::vector<std::string>& p,
            const LctResult& cur) {
    if (!cur.value) return v.has_value();
    if (!v) return false;
    if (*v != *cur.value) return *v < *cur.value;
    return p < cur.point;
}

}  // namespace

LctResult lct_divisor(const QDivisorX& d) {
    if (d.has_residual)
        throw std::invalid_argument("use bound operations for symbolic divisors");
    std::vector<std::pair<std::string, Rat>> support;
    for (const auto& [name, c] : d.coeffs) {
        if (c == 0) continue;
        if (c < 0) throw std::invalid_argument("lct requires an effective divisor");
        const CurveX& cx = lookup_x(name);  // throws on unknown names
        if (lookup(cx.down).mobile)
            throw std::invalid_argument("lct undefined for general members");
        support.emplace_back(name, c);
    }
    LctResult best;  // +infinity
    for (const auto& [name, c] : support) {
        // smooth point of a single support curve
        if (better(lct_local({c}), {name}, best)) {
            best.value = lct_local({c});
            best.point = {name};
        }
    }
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            const auto& [na, ca] = support[i];
            const auto& [nb, cb] = support[j];
            if (ixn_curves(na, nb) <= 0) continue;  // the curves are disjoint
            std::vector<std::string> pt = {na, nb};
            std::sort(pt.begin(), pt.end());
            auto v = lct_local({ca, cb});
            if (better(v, pt, best)) {
                best.value = v;
                best.point = pt;
            }
        }
    return best;
}

const std::vector<std::string>& rigid_downstairs() {
    static const std::vector<std::string> names = {
        "e1", "e2", "e3", "e4", "h12", "h13", "h14",
        "h23", "h24", "h34", "t11", "t22", "t33"};
    return names;
}

namespace {

const CurveX& upstairs_of(const std::string& down) {
    for (const auto& c : catalog_x())
        if (c.down == down) return c;
    throw std::logic_error("no upstairs curve over " + down);
}

}  // namespace

GlctUpperResult glct_upper_search(const DivClass& target, int max_coeff) {
    if (max_coeff < 0) throw std::invalid_argument("max_coeff must be nonnegative");
    if (!target.is_integral() || !is_effective(target))
        throw std::invalid_argument("target must be an effective integral class");
    const auto& names = rigid_downstairs();
    std::vector<DivClass> cls;
    for (const auto& n : names) cls.push_back(lookup(n).cls);

    std::optional<GlctUpperResult> best;
    std::vector<long> best_vec;
    std::vector<long> x(names.size(), 0);

    // DFS with degree pruning: every curve after the e's contributes exactly 1
    // to the l-coefficient, so the remaining degree caps the tail.
    auto feasible_tail = [&](std::size_t k, const DivClass& rem) {
        if (rem.c[0] < 0) return false;
        long slots = 0;
        for (std::size_t j = k; j < names.size(); ++j)
            if (cls[j].c[0] == 1) slots += max_coeff;
        if (rem.c[0] > slots) return false;
        // past the exceptional curves nothing raises an e-coordinate, and each
        // remaining curve lowers e-coordinates by at most its l-contribution
        if (k >= 4) {
            Rat deficit = 0;
            for (int i = 1; i < 5; ++i) {
                if (rem.c[i] > 0) return false;
                deficit -= rem.c[i];
            }
            if (deficit > 2 * rem.c[0]) return false;  // h-curves hit two e's
        }
        return true;
    };

    auto consider = [&](const std::vector<long>& vec) {
        QDivisorX up;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (vec[i] == 0) continue;
            const CurveX& cx = upstairs_of(names[i]);
            up.add(cx.name, Rat(vec[i] * cx.ram));  // phi^*(c) = ram * C
        }
        LctResult r = lct_divisor(up);
        if (!r.value) return;  // zero divisor: only when target == 0
        if (!best || *r.value < best->bound ||
            (*r.value == best->bound && vec < best_vec)) {
            GlctUpperResult g;
            g.bound = *r.value;
            for (std::size_t i = 0; i < names.size(); ++i) g.witness[names[i]] = vec[i];
            g.witness_pullback = up;
            best = g;
            best_vec = vec;
        }
    };

    std::function<void(std::size_t, DivClass)> dfs = [&](std::size_t k, DivClass rem) {
        if (k == names.size()) {
            bool zero = true;
            for (const auto& q : rem.c)
                if (q != 0) zero = false;
            if (zero) consider(x);
            return;
        }
        if (!feasible_tail(k, rem)) return;
        for (long v = 0; v <= max_coeff; ++v) {
            x[k] = v;
            DivClass r2 = rem - Rat(v) * cls[k];
            dfs(k + 1, r2);
        }
        x[k] = 0;
    };
    dfs(0, target);

    if (!best) throw std::runtime_error("no decomposition found");
    return *best;
}

QDivisorX witness_even_anti(long n) {
    if (n < 2) throw std::invalid_argument("the even anti-invariant witness needs n >= 2");
    QDivisorX d;
    for (int i : {2, 3})
        for (const auto& c : r_components(i)) d.add(c, 1);
    d.add("H12", Rat(4 * n - 4));
    d.add("H34", Rat(2 * n - 2));
    d.add("E1", Rat(2 * n));
    d.add("E2", Rat(2 * n - 4));
    return d;
}

QDivisorX witness_odd_inv(long n) {
    if (n < 1) throw std::invalid_argument("the odd invariant witness needs n >= 1");
    QDivisorX d;
    for (int i : {1, 2, 3})
        for (const auto& c : r_components(i)) d.add(c, 1);
    d.add("H13", Rat(4 * n - 4));
    d.add("E3", Rat(2 * n - 2));
    d.add("E1", Rat(2 * n - 2));
    d.add("H24", Rat(2 * n - 2));
    return d;
}

QDivisorX witness_odd_anti(long n) {
    if (n < 1) throw std::invalid_argument("the odd anti-invariant witness needs n >= 1");
    QDivisorX d;
    d.add("E1", Rat(2 * n - 1));
    d.add("E2", Rat(2 * n + 2));
    d.add("H12", Rat(4 * n));
    d.add("H23", 1);
    d.add("H24", 1);
    d.add("H34", Rat(2 * n));
    d.add("T22", 1);
    return d;
}

}  // namespace bur5
