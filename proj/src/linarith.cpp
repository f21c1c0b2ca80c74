#include "burniat5/linarith.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bur5 {

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    c0 += o.c0;
    for (const auto& [v, c] : o.coeff) {
        Rat s = coeff_of(v) + c;
        if (s == 0)
            coeff.erase(v);
        else
            coeff[v] = s;
    }
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    c0 -= o.c0;
    for (const auto& [v, c] : o.coeff) {
        Rat s = coeff_of(v) - c;
        if (s == 0)
            coeff.erase(v);
        else
            coeff[v] = s;
    }
    return *this;
}

LinExpr& LinExpr::operator*=(const Rat& s) {
    if (s == 0) {
        c0 = 0;
        coeff.clear();
        return *this;
    }
    c0 *= s;
    for (auto& [v, c] : coeff) c *= s;
    return *this;
}

LinExpr LinExpr::substituted(int v, const LinExpr& by) const {
    auto it = coeff.find(v);
    if (it == coeff.end()) return *this;
    LinExpr out = *this;
    Rat c = it->second;
    out.coeff.erase(v);
    LinExpr scaled = by;
    scaled *= c;
    out += scaled;
    return out;
}

Rat LinExpr::eval(const std::map<int, Rat>& assign) const {
    Rat r = c0;
    for (const auto& [v, c] : coeff) {
        auto it = assign.find(v);
        if (it == assign.end()) throw std::logic_error("eval: unassigned variable");
        r += c * it->second;
    }
    return r;
}

std::string LinExpr::str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : coeff) {
        std::string nm = v >= 0 && v < (int)names.size() ? names[v] : "x" + std::to_string(v);
        if (first) {
            if (c == 1)
                os << nm;
            else if (c == -1)
                os << "-" << nm;
            else
                os << rat_str(c) << "*" << nm;
            first = false;
        } else {
            if (c > 0)
                os << " + " << (c == 1 ? nm : rat_str(c) + "*" + nm);
            else
                os << " - " << (c == -1 ? nm : rat_str(-c) + "*" + nm);
        }
    }
    if (first) {
        os << rat_str(c0);
    } else if (c0 != 0) {
        if (c0 > 0)
            os << " + " << rat_str(c0);
        else
            os << " - " << rat_str(-c0);
    }
    return os.str();
}

std::string Constraint::str(const std::vector<std::string>& names) const {
    const char* r = rel == Rel::Ge ? " >= 0" : rel == Rel::Gt ? " > 0" : " == 0";
    return e.str(names) + r;
}

Constraint negate_ge_or_gt(const Constraint& c) {
    // not(e >= 0)  <=>  -e > 0 ; not(e > 0) <=> -e >= 0
    Constraint n;
    n.e = LinExpr(Rat(0)) - c.e;
    n.rel = c.rel == Rel::Ge ? Rel::Gt : Rel::Ge;
    return n;
}

namespace {

// Internal working form: inequalities only (Eq split into two Ge). The
// history tracks which original inequalities a derived one combines; by
// Kohler's criterion a constraint combining more than k+1 originals after k
// eliminations is implied by the others and may be dropped without changing
// the projection.
struct Ineq {
    LinExpr e;
    std::set<std::size_t> hist;
};

void normalize(Ineq& q) {
    if (q.e.coeff.empty()) return;
    Rat lead = q.e.coeff.begin()->second;
    Rat scale = lead > 0 ? lead : -lead;
    q.e *= Rat(1) / scale;
}

// drop exact duplicates
void dedupe(std::vector<Ineq>& ineqs) {
    std::vector<Ineq> out;
    for (auto& q : ineqs) {
        bool dup = false;
        for (auto& o : out)
            if (o.e == q.e) {
                if (q.hist.size() < o.hist.size()) o.hist = q.hist;
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(q));
    }
    ineqs = std::move(out);
}

int pick_variable_skipping(const std::vector<Ineq>& ineqs, int skip) {
    // Fewest (lower x upper) products first.
    std::map<int, std::pair<int, int>> counts;
    for (const auto& q : ineqs)
        for (const auto& [v, c] : q.e.coeff) {
            if (v == skip) continue;
            if (c > 0)
                counts[v].first++;
            else
                counts[v].second++;
        }
    int best = -1;
    long best_cost = -1;
    for (const auto& [v, lu] : counts) {
        long cost = (long)lu.first * lu.second;
        if (best == -1 || cost < best_cost) {
            best = v;
            best_cost = cost;
        }
    }
    return best;
}

}  // namespace

FeasResult LinSystem::solve() const {
    // Shared-epsilon encoding: every strict constraint e > 0 becomes
    // e - eps >= 0 for one fresh variable eps; the system has a rational
    // system keeps its stricts iff the closed system admits eps > 0. The
    // closed form keeps Kohler's redundancy criterion exact.
    constexpr int kEps = std::numeric_limits<int>::min() / 2;

    std::vector<Ineq> ineqs;
    std::vector<std::pair<int, LinExpr>> eq_subst;  // applied in order
    std::vector<Constraint> pending(cs_.begin(), cs_.end());
    bool any_strict = false;

    for (auto& c : pending) {
        LinExpr e = c.e;
        for (const auto& [v, by] : eq_subst) e = e.substituted(v, by);
        if (c.rel == Rel::Eq) {
            if (e.is_constant()) {
                if (e.c0 != 0) return {};
                continue;
            }
            // Solve for the first variable: x = -(rest)/coeff.
            auto [v, cv] = *e.coeff.begin();
            LinExpr rest = e;
            rest.coeff.erase(v);
            LinExpr by = rest * (Rat(-1) / cv);
            for (auto& q : ineqs) q.e = q.e.substituted(v, by);
            eq_subst.emplace_back(v, by);
        } else {
            if (c.rel == Rel::Gt) {
                any_strict = true;
                e += LinExpr::var(kEps, Rat(-1));
            }
            Ineq q{e, {ineqs.size()}};
            ineqs.push_back(std::move(q));
        }
    }
    for (auto& q : ineqs) normalize(q);

    // Fourier-Motzkin elimination of every variable except eps.
    struct Level {
        int var;
        std::vector<Ineq> lowers;  // a > 0: x >= -rest/a
        std::vector<Ineq> uppers;  // a < 0: x <= ...
    };
    std::vector<Level> levels;

    std::size_t eliminated = 0;
    std::vector<Ineq> terminal;  // constraints in eps alone
    for (;;) {
        std::vector<Ineq> rest;
        for (auto& q : ineqs) {
            if (q.e.is_constant()) {
                if (q.e.c0 < 0) return {};
            } else if (q.e.coeff.size() == 1 && q.e.coeff.count(kEps)) {
                terminal.push_back(std::move(q));
            } else {
                rest.push_back(std::move(q));
            }
        }
        ineqs = std::move(rest);
        dedupe(ineqs);
        if (ineqs.empty()) break;

        int v = pick_variable_skipping(ineqs, kEps);
        ++eliminated;
        Level lvl;
        lvl.var = v;
        std::vector<Ineq> next;
        for (auto& q : ineqs) {
            Rat a = q.e.coeff_of(v);
            if (a > 0)
                lvl.lowers.push_back(q);
            else if (a < 0)
                lvl.uppers.push_back(q);
            else
                next.push_back(q);
        }
        for (const auto& lo : lvl.lowers)
            for (const auto& up : lvl.uppers) {
                // lo: a x + r >= 0 (a>0), up: -b x + s >= 0 (b>0)
                std::set<std::size_t> hist;
                std::set_union(lo.hist.begin(), lo.hist.end(), up.hist.begin(),
                               up.hist.end(), std::inserter(hist, hist.begin()));
                if (hist.size() > eliminated + 1) continue;  // Kohler: redundant
                Rat a = lo.e.coeff_of(v);
                Rat b = -up.e.coeff_of(v);
                LinExpr comb = lo.e * b + up.e * a;  // coefficient of v cancels
                comb.coeff.erase(v);
                Ineq q{comb, std::move(hist)};
                normalize(q);
                next.push_back(std::move(q));
            }
        levels.push_back(std::move(lvl));
        ineqs = std::move(next);
    }

    // Pick eps from the terminal one-dimensional system.
    FeasResult res;
    res.feasible = true;
    auto& w = res.witness;
    if (any_strict) {
        std::optional<Rat> lo, hi;
        for (const auto& q : terminal) {
            Rat a = q.e.coeff_of(kEps);
            Rat bound = -q.e.c0 / a;
            if (a > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        if (hi && *hi <= 0) return {};
        if (lo && hi && *lo > *hi) return {};
        Rat base = lo && *lo > 0 ? *lo : Rat(0);
        Rat eps = hi ? Rat((base + *hi) / 2) : Rat(base + 1);
        w[kEps] = eps;
    }
    auto value_of = [&](const LinExpr& e) {
        Rat r = e.c0;
        for (const auto& [v, c] : e.coeff) r += c * w[v];  // defaults to 0
        return r;
    };
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        bool has_lo = false, has_up = false;
        Rat lo, up;
        for (const auto& q : it->lowers) {
            Rat a = q.e.coeff_of(it->var);
            LinExpr rest = q.e;
            rest.coeff.erase(it->var);
            Rat bound = -value_of(rest) / a;
            if (!has_lo || bound > lo) {
                lo = bound;
                has_lo = true;
            }
        }
        for (const auto& q : it->uppers) {
            Rat b = -q.e.coeff_of(it->var);
            LinExpr rest = q.e;
            rest.coeff.erase(it->var);
            Rat bound = value_of(rest) / b;
            if (!has_up || bound < up) {
                up = bound;
                has_up = true;
            }
        }
        Rat val;
        if (has_lo && has_up)
            val = (lo + up) / 2;
        else if (has_lo)
            val = lo;
        else if (has_up)
            val = up;
        else
            val = 0;
        w[it->var] = val;
    }
    // Equality substitutions, most recent first.
    for (auto it = eq_subst.rbegin(); it != eq_subst.rend(); ++it)
        w[it->first] = value_of(it->second);
    w.erase(kEps);
    return res;
}

bool LinSystem::entails(const Constraint& c) const {
    if (c.rel == Rel::Eq) {
        Constraint a{c.e, Rel::Ge};
        Constraint b{LinExpr(Rat(0)) - c.e, Rel::Ge};
        return entails(a) && entails(b);
    }
    LinSystem sys = *this;
    sys.add(negate_ge_or_gt(c));
    return sys.infeasible();
}

std::string LinSystem::check_farkas(const std::vector<std::pair<Rat, std::size_t>>& mults,
                                    const Constraint& claim) const {
    LinExpr acc;
    bool strict = false;
    for (const auto& [m, idx] : mults) {
        if (idx >= cs_.size()) return "farkas: constraint index out of range";
        const Constraint& c = cs_[idx];
        if (c.rel != Rel::Eq && m < 0) return "farkas: negative multiplier on an inequality";
        acc += c.e * m;
        if (c.rel == Rel::Gt && m > 0) strict = true;
    }
    // acc >= 0 (or > 0) holds; the claim must follow by adding a nonnegative
    // constant slack.
    LinExpr diff = claim.e - acc;
    if (!diff.is_constant()) return "farkas: combination does not match the claim";
    if (diff.c0 < 0) return "farkas: combination is weaker than the claim";
    if (claim.rel == Rel::Gt && !strict && diff.c0 == 0)
        return "farkas: strict claim not justified";
    if (claim.rel == Rel::Eq) return "farkas: equality claims unsupported";
    return "";
}

std::string LinSystem::check_farkas_infeasible(
    const std::vector<std::pair<Rat, std::size_t>>& mults) const {
    LinExpr acc;
    bool strict = false;
    for (const auto& [m, idx] : mults) {
        if (idx >= cs_.size()) return "farkas: constraint index out of range";
        const Constraint& c = cs_[idx];
        if (c.rel != Rel::Eq && m < 0) return "farkas: negative multiplier on an inequality";
        acc += c.e * m;
        if (c.rel == Rel::Gt && m > 0) strict = true;
    }
    if (!acc.is_constant()) return "farkas: combination is not constant";
    if (acc.c0 < 0) return "";                  // c >= 0 with c < 0
    if (acc.c0 == 0 && strict) return "";       // 0 > 0
    return "farkas: combination is not a contradiction";
}

}  // namespace bur5
