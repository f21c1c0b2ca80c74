#include "burniat5/checker.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "burniat5/bicover.hpp"
#include "burniat5/lct.hpp"

namespace bur5 {

FeasResult fm_infeasible(const LinSystem& sys) { return sys.solve(); }

namespace {

using AffClass = std::array<LinExpr, 5>;

AffClass aff_of(const DivClass& d) {
    AffClass a;
    for (int i = 0; i < 5; ++i) a[i] = LinExpr(d.c[i]);
    return a;
}

AffClass& add_scaled(AffClass& a, const DivClass& d, const LinExpr& s) {
    for (int i = 0; i < 5; ++i) a[i] += s * Rat(1) * d.c[i];
    return a;
}

AffClass& add_scaled(AffClass& a, const DivClass& d, const Rat& s) {
    for (int i = 0; i < 5; ++i) a[i] += LinExpr(s * d.c[i]);
    return a;
}

// pair(concrete, affine) under the diagonal form
LinExpr pair_aff(const DivClass& a, const AffClass& b) {
    LinExpr r = b[0] * a.c[0];
    for (int i = 1; i < 5; ++i) r -= b[i] * a.c[i];
    return r;
}

struct Poly {
    std::map<std::pair<int, int>, Rat> quad;  // ordered pairs (u <= v)
    LinExpr lin;

    static Poly of(const LinExpr& e) {
        Poly p;
        p.lin = e;
        return p;
    }
    Poly& operator+=(const Poly& o) {
        lin += o.lin;
        for (const auto& [k, v] : o.quad) {
            quad[k] += v;
            if (quad[k] == 0) quad.erase(k);
        }
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        lin -= o.lin;
        for (const auto& [k, v] : o.quad) {
            quad[k] -= v;
            if (quad[k] == 0) quad.erase(k);
        }
        return *this;
    }
    Poly& operator*=(const Rat& s) {
        lin *= s;
        if (s == 0) {
            quad.clear();
            return *this;
        }
        for (auto& [k, v] : quad) v *= s;
        return *this;
    }
};

Poly mul_lin(const LinExpr& a, const LinExpr& b) {
    Poly p;
    p.lin = a * b.c0 + b * a.c0;
    p.lin.c0 -= a.c0 * b.c0;  // the constant was counted twice
    for (const auto& [u, cu] : a.coeff)
        for (const auto& [v, cv] : b.coeff) {
            auto key = std::minmax(u, v);
            p.quad[{key.first, key.second}] += cu * cv;
            if (p.quad[{key.first, key.second}] == 0) p.quad.erase({key.first, key.second});
        }
    return p;
}

struct CheckFail {
    std::string msg;
    int line = 0, col = 0;
};

[[noreturn]] void reject(const std::string& msg, int line = 0, int col = 0) {
    throw CheckFail{msg, line, col};
}

struct Ctx {
    const Certificate& cert;
    std::vector<std::string> names;
    std::map<std::string, int> ids;
    LinSystem store;
    bool downstairs = false;
    bool pushforward_done = false;
    bool multaxiom_done = false;
    bool closed = false;
    std::map<std::pair<int, int>, int> products;
    int mu = -1;

    int n_id = -1;
    LinExpr tau, m_expr;
    std::vector<std::string> fixed;  // upstairs component names
    AffClass mobile;

    struct Term {
        int var;
        std::string curve;  // upstairs name, or downstairs name for DownY
        Rat lb;
    };
    std::vector<Term> terms;
    bool has_omega = false;
    AffClass level_class;
    std::vector<std::pair<DivClass, Rat>> omega_lower;  // mode classes + coeffs
    std::set<std::string> excluded;                     // decomposed curve names

    explicit Ctx(const Certificate& c) : cert(c) {}

    int var_id(const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        int id = (int)names.size();
        names.push_back(name);
        ids[name] = id;
        return id;
    }
    bool has_var(const std::string& name) const { return ids.count(name) > 0; }

    Level level() const { return cert.decomp ? cert.decomp->level : Level::FullX; }

    // ---- numeric evaluation ----------------------------------------------

    LinExpr n_lin() {
        if (n_id < 0) reject("this certificate has no parameter n");
        return LinExpr::var(n_id);
    }

    Poly eval_poly(const NumExpr& e) {
        switch (e.kind) {
            case NumExpr::Kind::Num: return Poly::of(LinExpr(e.value));
            case NumExpr::Kind::Var: {
                if (e.name == "n") return Poly::of(n_lin());
                if (!has_var(e.name)) reject("undeclared variable: " + e.name, e.line, e.col);
                return Poly::of(LinExpr::var(ids.at(e.name)));
            }
            case NumExpr::Kind::Add: {
                Poly p;
                for (const auto& a : e.args) p += eval_poly(a);
                return p;
            }
            case NumExpr::Kind::Sub: {
                Poly p = eval_poly(e.args[0]);
                for (std::size_t i = 1; i < e.args.size(); ++i) p -= eval_poly(e.args[i]);
                return p;
            }
            case NumExpr::Kind::Neg: {
                Poly p = eval_poly(e.args[0]);
                p *= Rat(-1);
                return p;
            }
            case NumExpr::Kind::Mul: {
                Poly p = Poly::of(LinExpr(Rat(1)));
                for (const auto& a : e.args) {
                    Poly q = eval_poly(a);
                    if (p.quad.empty() && q.quad.empty()) {
                        p = mul_lin(p.lin, q.lin);
                    } else if (q.quad.empty() && q.lin.is_constant()) {
                        p *= q.lin.c0;
                    } else if (p.quad.empty() && p.lin.is_constant()) {
                        Rat s = p.lin.c0;
                        p = q;
                        p *= s;
                    } else {
                        reject("expression of degree > 2", e.line, e.col);
                    }
                }
                return p;
            }
            case NumExpr::Kind::Div: {
                Poly a = eval_poly(e.args[0]);
                Poly b = eval_poly(e.args[1]);
                if (!b.quad.empty() || !b.lin.is_constant() || b.lin.c0 == 0)
                    reject("division by a non-constant", e.line, e.col);
                a *= Rat(1) / b.lin.c0;
                return a;
            }
        }
        reject("bad expression");
    }

    LinExpr resolve(const Poly& p, int line, int col) {
        LinExpr out = p.lin;
        for (const auto& [key, c] : p.quad) {
            auto it = products.find(key);
            if (it == products.end())
                reject("product not declared: " + names[key.first] + "*" + names[key.second],
                       line, col);
            out += LinExpr::var(it->second, c);
        }
        return out;
    }

    LinExpr eval_lin(const NumExpr& e) { return resolve(eval_poly(e), e.line, e.col); }

    LinExpr eval_n_only(const NumExpr& e) {
        LinExpr v = eval_lin(e);
        for (const auto& [var, c] : v.coeff)
            if (var != n_id) reject("expression must be constant or affine in n", e.line, e.col);
        return v;
    }

    Constraint cond_to_constraint(const CondExpr& c) {
        LinExpr l = eval_lin(c.lhs), r = eval_lin(c.rhs);
        switch (c.rel) {
            case CmpRel::Le: return ge0(r - l);
            case CmpRel::Lt: return gt0(r - l);
            case CmpRel::Ge: return ge0(l - r);
            case CmpRel::Gt: return gt0(l - r);
            case CmpRel::Eq: return eq0(l - r);
        }
        reject("bad relation");
    }

    bool entails(const Constraint& c) const { return store.entails(c); }

    // ---- curve and class helpers -----------------------------------------

    DivClass mode_class(const std::string& name) const {
        // class used in intersection arithmetic: upstairs the half class,
        // downstairs the plain class
        if (downstairs_mode()) return lookup(name).cls;
        return halfclass(lookup_x(name));
    }
    bool downstairs_mode() const { return level() == Level::DownY; }

    Rat mode_ixn(const DivClass& a, const DivClass& b) const {
        return downstairs_mode() ? pair(a, b) : ixn(a, b);
    }
    LinExpr mode_ixn_aff(const DivClass& a, const AffClass& b) const {
        LinExpr p = pair_aff(a, b);
        return downstairs_mode() ? p : p * Rat(4);
    }

    DivClass test_class(const TestRef& t) const {
        if (t.is_divisor) reject("test must be a curve or pulled-back class", t.line, t.col);
        if (t.is_pull) return lookup(t.name).cls;  // phi^* of a downstairs class
        return mode_class(t.name);
    }

    bool test_is_omega_safe(const TestRef& t) const {
        if (excluded.count(t.name) && !t.is_pull) return true;
        // nef downstairs class: pairs >= 0 with every negative curve
        DivClass down = t.is_pull ? lookup(t.name).cls
                        : downstairs_mode() ? lookup(t.name).cls
                                            : lookup(lookup_x(t.name).down).cls;
        for (const auto& C : negative_curves())
            if (pair(down, C) < 0) return false;
        return true;
    }

    // ---- locus -------------------------------------------------------------

    static bool meets_x(const std::string& a, const std::string& b) {
        if (a == b) return true;
        return ixn_curves(a, b) > 0;
    }

    bool locus_in_x(const std::string& xname) const {
        return std::find(cert.locus_in.begin(), cert.locus_in.end(), xname) !=
               cert.locus_in.end();
    }

    bool locus_out_x(const std::string& xname) const {
        if (locus_in_x(xname)) return false;
        if (std::find(cert.locus_out.begin(), cert.locus_out.end(), xname) !=
            cert.locus_out.end())
            return true;
        if (cert.offbranch && lookup_x(xname).ram == 2) return true;
        if (cert.offfixed &&
            std::find(fixed.begin(), fixed.end(), xname) != fixed.end())
            return true;
        for (const auto& in : cert.locus_in)
            if (!meets_x(in, xname)) return true;  // P lies on a curve missing xname
        if (cert.locus_in.size() >= 2) return true;  // two curves pin the point
        return false;
    }

    static const CurveX& upstairs_over(const std::string& down) {
        for (const auto& c : catalog_x())
            if (c.down == down) return c;
        reject("no upstairs curve over " + down);
    }

    bool locus_in_mode(const std::string& name) const {
        if (downstairs_mode()) {
            for (const auto& in : cert.locus_in)
                if (lookup_x(in).down == name) return true;
            return false;
        }
        return locus_in_x(name);
    }
    bool locus_out_mode(const std::string& name) const {
        if (downstairs_mode()) return locus_out_x(upstairs_over(name).name);
        return locus_out_x(name);
    }
};

// ---- theorem data ----------------------------------------------------------

void setup_theorem(Ctx& ctx) {
    const Certificate& c = ctx.cert;
    DivClass mK = Rat(-1) * canonical_class();
    auto n = [&] { return LinExpr::var(ctx.n_id); };
    switch (c.theorem) {
        case Theorem::Thm1:
            ctx.tau = LinExpr(Rat(4));
            ctx.m_expr = LinExpr(Rat(2));
            ctx.mobile = aff_of(mK);
            break;
        case Theorem::Thm2Inv:
            ctx.n_id = ctx.var_id("n");
            ctx.tau = n() * Rat(4);
            ctx.m_expr = n() * Rat(2);
            add_scaled(ctx.mobile, mK, n());
            break;
        case Theorem::Thm2Anti: {
            ctx.n_id = ctx.var_id("n");
            ctx.tau = n() * Rat(4) - LinExpr(Rat(3));
            ctx.m_expr = n() * Rat(2);
            for (const auto& x : r_components(2)) ctx.fixed.push_back(x);
            for (const auto& x : r_components(3)) ctx.fixed.push_back(x);
            add_scaled(ctx.mobile, mK, n());
            add_scaled(ctx.mobile, l_class(1), Rat(-1));
            break;
        }
        case Theorem::Thm3Inv: {
            ctx.n_id = ctx.var_id("n");
            ctx.tau = n() * Rat(4) - LinExpr(Rat(3));
            ctx.m_expr = n() * Rat(2) + LinExpr(Rat(1));
            ctx.fixed = r_all();
            add_scaled(ctx.mobile, mK, n() - LinExpr(Rat(1)));
            break;
        }
        case Theorem::Thm3Anti: {
            ctx.n_id = ctx.var_id("n");
            ctx.tau = n() * Rat(4);
            ctx.m_expr = n() * Rat(2) + LinExpr(Rat(1));
            for (const auto& x : r_components(1)) ctx.fixed.push_back(x);
            add_scaled(ctx.mobile, mK, n() - LinExpr(Rat(1)));
            add_scaled(ctx.mobile, l_class(1), Rat(1));
            break;
        }
    }
}

// class expressions inside (class ...)
AffClass eval_class_expr(Ctx& ctx, const Sexpr& e);

LinExpr eval_class_num(Ctx& ctx, const Sexpr& e) {
    // numeric subexpressions in class position: rationals and n only
    if (!e.is_list) {
        if (e.atom == "n") return ctx.n_lin();
        // rational literal
        std::string s = e.atom;
        bool neg = !s.empty() && s[0] == '-';
        std::string body = neg ? s.substr(1) : s;
        auto slash = body.find('/');
        Rat r = slash == std::string::npos
                    ? Rat(Int(body))
                    : Rat(Int(body.substr(0, slash)), Int(body.substr(slash + 1)));
        return LinExpr(neg ? -r : r);
    }
    std::string h = e.head();
    if (h == "+") {
        LinExpr r;
        for (std::size_t i = 1; i < e.size(); ++i) r += eval_class_num(ctx, e.at(i));
        return r;
    }
    if (h == "-") {
        if (e.size() == 2) return LinExpr(Rat(0)) - eval_class_num(ctx, e.at(1));
        LinExpr r = eval_class_num(ctx, e.at(1));
        for (std::size_t i = 2; i < e.size(); ++i) r -= eval_class_num(ctx, e.at(i));
        return r;
    }
    if (h == "*") {
        LinExpr a = eval_class_num(ctx, e.at(1));
        LinExpr b = eval_class_num(ctx, e.at(2));
        if (a.is_constant()) return b * a.c0;
        if (b.is_constant()) return a * b.c0;
        reject("class multiple must be affine in n", e.line, e.col);
    }
    if (h == "/") {
        LinExpr a = eval_class_num(ctx, e.at(1));
        LinExpr b = eval_class_num(ctx, e.at(2));
        if (!b.is_constant() || b.c0 == 0) reject("bad division in class expression");
        return a * (Rat(1) / b.c0);
    }
    reject("bad numeric class expression", e.line, e.col);
}

AffClass eval_class_expr(Ctx& ctx, const Sexpr& e) {
    if (!e.is_list) {
        std::string a = e.atom;
        if (a == "-KY") return aff_of(Rat(-1) * canonical_class());
        if (a == "KY") return aff_of(canonical_class());
        if (a == "L1") return aff_of(l_class(1));
        if (a == "L2") return aff_of(l_class(2));
        if (a == "L3") return aff_of(l_class(3));
        if (a == "B1") return aff_of(branch_class(1));
        if (a == "B2") return aff_of(branch_class(2));
        if (a == "B3") return aff_of(branch_class(3));
        if (has_curve(a)) return aff_of(lookup(a).cls);
        reject("unknown class symbol: " + a, e.line, e.col);
    }
    std::string h = e.head();
    if (h == "+") {
        AffClass r{};
        for (std::size_t i = 1; i < e.size(); ++i) {
            AffClass t = eval_class_expr(ctx, e.at(i));
            for (int k = 0; k < 5; ++k) r[k] += t[k];
        }
        return r;
    }
    if (h == "-") {
        AffClass r = eval_class_expr(ctx, e.at(1));
        for (std::size_t i = 2; i < e.size(); ++i) {
            AffClass t = eval_class_expr(ctx, e.at(i));
            for (int k = 0; k < 5; ++k) r[k] -= t[k];
        }
        return r;
    }
    if (h == "scale") {
        LinExpr s = eval_class_num(ctx, e.at(1));
        AffClass t = eval_class_expr(ctx, e.at(2));
        AffClass r{};
        for (int k = 0; k < 5; ++k) {
            if (t[k].is_constant())
                r[k] = s * t[k].c0;
            else if (s.is_constant())
                r[k] = t[k] * s.c0;
            else
                reject("class expression of degree > 1 in n", e.line, e.col);
        }
        return r;
    }
    reject("unknown class operator: " + h, e.line, e.col);
}

void setup_decomp(Ctx& ctx) {
    const Decomp& d = *ctx.cert.decomp;
    DivClass mK = Rat(-1) * canonical_class();
    // expected class of the decomposed divisor
    AffClass expected{};
    add_scaled(expected, mK, ctx.m_expr * Rat(1, 2));
    if (d.level == Level::MobileX) expected = ctx.mobile;

    // audit the declared class expression
    AffClass declared{};
    if (!d.class_expr.is_list && d.class_expr.atom == "2K") {
        if (ctx.cert.theorem != Theorem::Thm1)
            reject("class 2K only fits the glct certificates", d.line, d.col);
        declared = aff_of(mK);
    } else if (d.class_expr.is_list && d.class_expr.head() == "mKX") {
        if (d.level != Level::FullX)
            reject("mKX class only fits a full decomposition", d.line, d.col);
        LinExpr m = eval_class_num(ctx, d.class_expr.at(1));
        if (!(m == ctx.m_expr)) reject("declared multiple disagrees with the theorem", d.line, d.col);
        declared = expected;
    } else {
        declared = eval_class_expr(ctx, d.class_expr);
    }
    for (int k = 0; k < 5; ++k)
        if (!(declared[k] == expected[k]))
            reject("declared class disagrees with the theorem", d.line, d.col);
    ctx.level_class = expected;

    std::set<std::string> term_curves;
    for (const auto& t : d.terms) {
        Ctx::Term ct;
        ct.var = ctx.var_id(t.var);
        ct.curve = t.curve;
        ct.lb = t.lower;
        term_curves.insert(t.curve);
        if (d.level == Level::FullX) {
            bool in_fixed =
                std::find(ctx.fixed.begin(), ctx.fixed.end(), t.curve) != ctx.fixed.end();
            if (in_fixed && t.lower < 1)
                reject("fixed-part component needs a lower bound of at least 1: " + t.curve,
                       t.line, t.col);
        }
        ctx.store.add(ge0(LinExpr::var(ct.var) - LinExpr(ct.lb)));
        ctx.terms.push_back(ct);
    }
    ctx.has_omega = d.has_omega;
    ctx.excluded = term_curves;

    // forced lower part of the residual
    if (d.level == Level::FullX) {
        for (const auto& f : ctx.fixed)
            if (!term_curves.count(f)) ctx.omega_lower.emplace_back(halfclass(lookup_x(f)), 1);
    } else if (d.level == Level::DownY) {
        for (const auto& f : ctx.fixed) {
            std::string down = lookup_x(f).down;
            if (!term_curves.count(down))
                ctx.omega_lower.emplace_back(lookup(down).cls, Rat(1, 2));
        }
    }
}

// ---- step handlers ----------------------------------------------------------

struct Runner {
    Ctx& ctx;

    void require_mode_ready(const Step& s) {
        if (ctx.downstairs_mode() && !ctx.pushforward_done)
            reject("downstairs arithmetic before the pushforward step", s.line, s.col);
    }

    const Ctx::Term& term_for_curve(const std::string& curve, const Step& s) {
        for (const auto& t : ctx.terms)
            if (t.curve == curve) return t;
        reject("curve is not a declared term: " + curve, s.line, s.col);
    }
    const Ctx::Term& term_for_var(const std::string& var, const Step& s) {
        int id = ctx.ids.count(var) ? ctx.ids.at(var) : -1;
        for (const auto& t : ctx.terms)
            if (t.var == id) return t;
        reject("not a term variable: " + var, s.line, s.col);
    }

    void run_ixn(const Step& s) {
        require_mode_ready(s);
        LinExpr expected = ctx.mode_ixn_aff(ctx.test_class(s.rhs), ctx.level_class);
        LinExpr claimed = ctx.eval_n_only(s.value);
        if (!(expected == claimed))
            reject("intersection identity fails: computed " +
                       expected.str(ctx.names) + ", claimed " + claimed.str(ctx.names),
                   s.line, s.col);
        if (!ctx.has_omega) return;  // nothing to bound
        if (!ctx.test_is_omega_safe(s.rhs))
            reject("cannot bound the residual against " + s.rhs.name, s.line, s.col);
        DivClass test = ctx.test_class(s.rhs);
        LinExpr lhs;
        for (const auto& t : ctx.terms)
            lhs += LinExpr::var(t.var, ctx.mode_ixn(ctx.mode_class(t.curve), test));
        Rat lower_part = 0;
        for (const auto& [cls, coeff] : ctx.omega_lower)
            lower_part += coeff * ctx.mode_ixn(cls, test);
        ctx.store.add(ge0(claimed - LinExpr(lower_part) - lhs));
    }

    void run_ixnval(const Step& s) {
        require_mode_ready(s);
        auto side = [&](const TestRef& t) -> AffClass {
            if (t.is_divisor) return ctx.level_class;
            return aff_of(ctx.test_class(t));
        };
        AffClass a = side(s.lhs), b = side(s.rhs);
        bool a_const = true, b_const = true;
        for (int k = 0; k < 5; ++k) {
            a_const = a_const && a[k].is_constant();
            b_const = b_const && b[k].is_constant();
        }
        if (!a_const && !b_const) reject("one side must be a concrete class", s.line, s.col);
        if (!a_const) std::swap(a, b);
        DivClass ac;
        for (int k = 0; k < 5; ++k) ac.c[k] = a[k].c0;
        LinExpr got = ctx.mode_ixn_aff(ac, b);
        LinExpr claimed = ctx.eval_n_only(s.value);
        if (!(got == claimed))
            reject("intersection identity fails: computed " + got.str(ctx.names) +
                       ", claimed " + claimed.str(ctx.names),
                   s.line, s.col);
    }

    LinExpr mu_var() {
        if (ctx.mu < 0) {
            ctx.mu = ctx.var_id("multP(Omega)");
            ctx.store.add(ge0(LinExpr::var(ctx.mu)));
        }
        return LinExpr::var(ctx.mu);
    }

    void run_adjunction(const Step& s) {
        require_mode_ready(s);
        const bool down = ctx.downstairs_mode();
        if (!ctx.locus_in_mode(s.curve))
            reject("adjunction curve is not in the point locus", s.line, s.col);
        const Ctx::Term& tc = term_for_curve(s.curve, s);
        bool c_in_fixed = false;
        if (ctx.level() == Level::MobileX)
            c_in_fixed =
                std::find(ctx.fixed.begin(), ctx.fixed.end(), s.curve) != ctx.fixed.end();
        LinExpr coeff = LinExpr::var(tc.var);
        if (c_in_fixed) coeff += LinExpr(Rat(1));

        // guard: total boundary coefficient allows raising the curve to 1
        LinExpr guard = down ? ctx.tau - coeff * Rat(2) : ctx.tau - coeff;
        if (!ctx.entails(ge0(guard)))
            reject("adjunction guard not entailed", s.line, s.col);

        if (down) {
            const CurveY& cy = lookup(s.curve);
            if (cy.branch == Branch::none)
                reject("downstairs adjunction curve must lie in the branch locus", s.line,
                       s.col);
            for (const auto& x : catalog_x()) {
                if (x.ram != 2 || x.down == s.curve) continue;
                if (!ctx.locus_out_mode(x.down))
                    reject("branch curve " + x.down + " may pass through the point", s.line,
                           s.col);
            }
            if (!s.keep.empty()) reject("keep clauses are an upstairs notion", s.line, s.col);
        }

        std::set<int> subtracted{tc.var};
        for (const auto& v : s.sub) {
            const Ctx::Term& t = term_for_var(v, s);
            if (t.var == tc.var) reject("cannot subtract the adjunction curve", s.line, s.col);
            if (!ctx.locus_out_mode(t.curve))
                reject("subtracted term may pass through the point: " + t.curve, s.line,
                       s.col);
            subtracted.insert(t.var);
        }

        if (ctx.level() == Level::MobileX) {
            std::set<std::string> keep(s.keep.begin(), s.keep.end());
            for (const auto& k : s.keep) {
                if (k == s.curve) reject("the adjunction curve cannot be kept", s.line, s.col);
                if (std::find(ctx.fixed.begin(), ctx.fixed.end(), k) == ctx.fixed.end())
                    reject("kept curve is not a fixed-part component: " + k, s.line, s.col);
            }
            for (const auto& f : ctx.fixed) {
                if (f == s.curve || keep.count(f)) continue;
                if (!ctx.locus_out_mode(f))
                    reject("dropped fixed component may pass through the point: " + f,
                           s.line, s.col);
            }
        } else if (!s.keep.empty()) {
            reject("keep clauses apply to moving-part decompositions", s.line, s.col);
        }

        if (s.mode == ConcludeMode::Global) {
            // Delta = kept fixed + divisor - a_C * C - subtracted terms, the
            // boundary left after raising C to coefficient one (the fixed copy
            // of C is consumed by the raise); conclusion C . Delta > tau
            AffClass delta = ctx.level_class;
            if (ctx.level() == Level::MobileX)
                for (const auto& k : s.keep) add_scaled(delta, ctx.mode_class(k), Rat(1));
            DivClass ccls = ctx.mode_class(s.curve);
            for (int k = 0; k < 5; ++k) delta[k] -= LinExpr::var(tc.var) * ccls.c[k];
            for (const auto& t : ctx.terms) {
                if (!subtracted.count(t.var) || t.var == tc.var) continue;
                DivClass tcls = ctx.mode_class(t.curve);
                for (int k = 0; k < 5; ++k) delta[k] -= LinExpr::var(t.var) * tcls.c[k];
            }
            LinExpr value = ctx.mode_ixn_aff(ccls, delta);
            ctx.store.add(gt0(value - ctx.tau));
        } else {
            // multiplicity form: mult_P of the residual boundary exceeds tau
            LinExpr contrib = mu_var();
            if (ctx.level() == Level::MobileX) {
                // at most one fixed component passes through any point of C
                std::string second_in;
                for (const auto& in : ctx.cert.locus_in)
                    if (in != s.curve) second_in = in;
                Rat cap = 0;
                if (!second_in.empty()) {
                    if (std::find(s.keep.begin(), s.keep.end(), second_in) != s.keep.end())
                        cap = 1;
                } else {
                    for (const auto& k : s.keep)
                        if (!ctx.locus_out_mode(k)) {
                            cap = 1;
                            break;
                        }
                }
                contrib += LinExpr(cap);
            }
            for (const auto& t : ctx.terms) {
                if (subtracted.count(t.var)) continue;
                if (ctx.locus_out_mode(t.curve)) continue;
                contrib += LinExpr::var(t.var);
            }
            ctx.store.add(gt0(contrib - ctx.tau));
        }
    }

    void run_multbound(const Step& s) {
        require_mode_ready(s);
        if (!ctx.locus_in_mode(s.curve))
            reject("multiplicity bound needs the point on the curve", s.line, s.col);
        term_for_curve(s.curve, s);  // membership guarantees C is off the residual
        AffClass omega = ctx.level_class;
        for (const auto& t : ctx.terms) {
            DivClass tcls = ctx.mode_class(t.curve);
            for (int k = 0; k < 5; ++k) omega[k] -= LinExpr::var(t.var) * tcls.c[k];
        }
        LinExpr value = ctx.mode_ixn_aff(ctx.mode_class(s.curve), omega);
        ctx.store.add(ge0(value - mu_var()));
    }

    void run_pushforward(const Step& s) {
        if (ctx.pushforward_done) reject("pushforward already applied", s.line, s.col);
        if (ctx.cert.decomp && ctx.level() != Level::DownY)
            reject("pushforward requires a downstairs decomposition", s.line, s.col);
        ctx.pushforward_done = true;
        // phi^*(d) >= D >= fixed part forces half-integral coefficients on the
        // images of the fixed components
        std::set<std::string> fixed_down;
        for (const auto& f : ctx.fixed) fixed_down.insert(lookup_x(f).down);
        for (const auto& t : ctx.terms)
            if (fixed_down.count(t.curve))
                ctx.store.add(ge0(LinExpr::var(t.var) - LinExpr(Rat(1, 2))));
    }

    void run_glct(const Step& s) {
        if (s.glct_base == "del-pezzo") {
            if (!ctx.pushforward_done)
                reject("the del Pezzo bound applies after the pushforward", s.line, s.col);
            for (const auto& x : catalog_x()) {
                if (x.ram != 2) continue;
                if (!ctx.locus_out_x(x.name))
                    reject("point not known to avoid the branch locus: " + x.name, s.line,
                           s.col);
            }
            // d ~ (m/2)(-K_Y) and glct(Y, -K_Y) = 1/2: contradiction when
            // m/2 <= tau/2
            LinExpr mu = ctx.m_expr * Rat(1, 2);
            if (!ctx.entails(ge0(ctx.tau * Rat(1, 2) - mu)))
                reject("glct comparison not entailed", s.line, s.col);
        } else {  // theorem-1
            if (ctx.cert.theorem == Theorem::Thm1)
                reject("the glct(X, 2K_X) bound cannot support its own certificates",
                       s.line, s.col);
            if (ctx.downstairs_mode() || ctx.pushforward_done)
                reject("the glct(X, 2K_X) bound is an upstairs closure", s.line, s.col);
            for (const auto& f : ctx.fixed)
                if (!ctx.locus_out_x(f))
                    reject("point not known to avoid the fixed part: " + f, s.line, s.col);
            // moving part ~ lambda * (-K_Y) pulled back, i.e. lambda * 2K_X
            LinExpr lambda = ctx.mobile[0] * Rat(1, 3);
            DivClass mK = Rat(-1) * canonical_class();
            for (int k = 0; k < 5; ++k)
                if (!(ctx.mobile[k] == lambda * mK.c[k]))
                    reject("moving part is not a multiple of -K_Y", s.line, s.col);
            if (!ctx.entails(ge0(ctx.tau * Rat(1, 4) - lambda)))
                reject("glct comparison not entailed", s.line, s.col);
        }
        ctx.closed = true;
    }

    void run_multaxiom(const Step& s) {
        if (ctx.multaxiom_done) reject("multiplicity axiom already used", s.line, s.col);
        ctx.multaxiom_done = true;
        int v = ctx.var_id("multP(D)");
        ctx.store.add(gt0(LinExpr::var(v) - ctx.tau));
    }

    void run_product(const Step& s) {
        auto fid = [&](const std::string& v) -> int {
            if (v == "n") {
                if (ctx.n_id < 0) reject("this certificate has no parameter n", s.line, s.col);
                return ctx.n_id;
            }
            return ctx.ids.at(v);
        };
        int a = fid(s.pvar1), b = fid(s.pvar2);
        auto key = std::minmax(a, b);
        if (ctx.products.count({key.first, key.second}))
            reject("product already declared", s.line, s.col);
        int z = ctx.var_id(s.pname);
        ctx.products[{key.first, key.second}] = z;
        if (ctx.entails(ge0(LinExpr::var(a))) && ctx.entails(ge0(LinExpr::var(b))))
            ctx.store.add(ge0(LinExpr::var(z)));
    }

    void run_mulineq(const Step& s) {
        Constraint prem = ctx.cond_to_constraint(s.premise);
        if (prem.rel == Rel::Eq) reject("multiply inequalities, not equalities", s.line, s.col);
        if (!ctx.entails(prem)) reject("premise not entailed", s.line, s.col);
        LinExpr factor = ctx.eval_lin(s.factor);
        if (!ctx.entails(ge0(factor))) reject("factor not entailed nonnegative", s.line, s.col);
        bool strict = prem.rel == Rel::Gt && ctx.entails(gt0(factor));
        Poly prod = mul_lin(prem.e, factor);
        LinExpr res = ctx.resolve(prod, s.line, s.col);
        ctx.store.add(strict ? gt0(res) : ge0(res));
    }

    void run_jiangzou(const Step& s) {
        if (ctx.downstairs_mode()) reject("jiangzou runs upstairs", s.line, s.col);
        std::set<std::string> seen;
        auto gather = [&](const std::vector<std::string>& side, bool& has_omega,
                          std::vector<const Ctx::Term*>& ts) {
            for (const auto& v : side) {
                if (seen.count(v)) reject("divisor piece used twice: " + v, s.line, s.col);
                seen.insert(v);
                if (v == "Omega") {
                    if (!ctx.has_omega) reject("no residual declared", s.line, s.col);
                    has_omega = true;
                } else {
                    ts.push_back(&term_for_var(v, s));
                }
            }
        };
        bool b_omega = false, c_omega = false;
        std::vector<const Ctx::Term*> b_terms, c_terms;
        gather(s.bprime, b_omega, b_terms);
        gather(s.cside, c_omega, c_terms);
        if (b_omega && c_omega) reject("the residual can appear on one side only", s.line, s.col);

        auto mult_expr = [&](const std::vector<const Ctx::Term*>& ts, bool omega) {
            LinExpr e;
            for (const auto* t : ts) {
                if (!ctx.locus_in_mode(t->curve))
                    reject("jiangzou component must pass through the point: " + t->curve,
                           s.line, s.col);
                e += LinExpr::var(t->var);
            }
            if (omega) e += mu_var();
            return e;
        };
        LinExpr mb = mult_expr(b_terms, b_omega);
        LinExpr mc = mult_expr(c_terms, c_omega);
        LinExpr mlow = ctx.eval_lin(s.mlow);
        LinExpr mhigh = ctx.eval_lin(s.mhigh);
        if (!ctx.entails(ge0(mb - mlow))) reject("lower multiplicity bound not entailed", s.line, s.col);
        if (!ctx.entails(ge0(mhigh - mb))) reject("upper multiplicity bound not entailed", s.line, s.col);
        if (!ctx.entails(ge0(ctx.tau - mhigh))) reject("multiplicity may exceed the threshold", s.line, s.col);
        if (!ctx.entails(gt0(mlow))) reject("positive multiplicity not entailed", s.line, s.col);
        if (!ctx.entails(gt0(mc))) reject("second piece not known to pass through the point", s.line, s.col);

        // exact bilinear value of B' . C
        AffClass omega_cls = ctx.level_class;
        for (const auto& t : ctx.terms) {
            DivClass tcls = ctx.mode_class(t.curve);
            for (int k = 0; k < 5; ++k) omega_cls[k] -= LinExpr::var(t.var) * tcls.c[k];
        }
        Poly U;
        auto pair_term_omega = [&](const Ctx::Term* t) {
            LinExpr v = ctx.mode_ixn_aff(ctx.mode_class(t->curve), omega_cls);
            U += mul_lin(LinExpr::var(t->var), v);
        };
        for (const auto* b : b_terms) {
            if (c_omega) pair_term_omega(b);
            for (const auto* c : c_terms) {
                Rat q = ctx.mode_ixn(ctx.mode_class(b->curve), ctx.mode_class(c->curve));
                U += mul_lin(LinExpr::var(b->var), LinExpr::var(c->var, q));
            }
        }
        if (b_omega)
            for (const auto* c : c_terms) pair_term_omega(c);

        Poly ib = ctx.eval_poly(s.ibound);
        Poly diff = ib;
        diff -= U;
        for (const auto& [key, coeffq] : diff.quad) {
            if (coeffq < 0) reject("intersection bound is below the exact value", s.line, s.col);
            if (!ctx.entails(ge0(LinExpr::var(key.first))) ||
                !ctx.entails(ge0(LinExpr::var(key.second))))
                reject("dropped product has an unknown sign", s.line, s.col);
        }
        if (!ctx.entails(ge0(diff.lin)))
            reject("intersection bound is below the exact value", s.line, s.col);

        // The local intersection I = (B'.C)_P satisfies I <= B'.C <= ibound and
        // the two-scale log canonicity comparison forces tau * m < I.
        int iv = ctx.var_id("(B'.C)_P#" + std::to_string(ctx.names.size()));
        LinExpr I = LinExpr::var(iv);
        ctx.store.add(ge0(ctx.resolve(ib, s.line, s.col) - I));
        Poly taum = mul_lin(ctx.tau, mlow);
        ctx.store.add(gt0(I - ctx.resolve(taum, s.line, s.col)));
    }

    void run_derive(const Step& s) {
        Constraint c = ctx.cond_to_constraint(s.claim);
        if (!ctx.entails(c)) {
            LinSystem sys = ctx.store;
            std::string extra;
            if (c.rel != Rel::Eq) {
                sys.add(negate_ge_or_gt(c));
                auto r = sys.solve();
                if (r.feasible) {
                    extra = "; counterexample:";
                    for (const auto& [v, val] : r.witness)
                        extra += " " + ctx.names[v] + "=" + rat_str(val);
                }
            }
            reject("claim not entailed" + extra, s.line, s.col);
        }
        ctx.store.add(c);
    }

    void run_linear(const Step& s) {
        Constraint c = ctx.cond_to_constraint(s.claim);
        std::string err = ctx.store.check_farkas(s.farkas, c);
        if (!err.empty()) reject(err, s.line, s.col);
        ctx.store.add(c);
    }

    void run_contradiction(const Step& s) {
        if (s.has_farkas) {
            std::string err = ctx.store.check_farkas_infeasible(s.farkas);
            if (!err.empty()) reject(err, s.line, s.col);
            ctx.closed = true;
            return;
        }
        auto r = ctx.store.solve();
        if (r.feasible) {
            std::string msg = "constraints are satisfiable:";
            for (const auto& [v, val] : r.witness)
                msg += " " + ctx.names[v] + "=" + rat_str(val);
            reject(msg, s.line, s.col);
        }
        ctx.closed = true;
    }

    void run_casesplit(const Step& s) {
        int v = s.split_var == "n" ? ctx.n_id : ctx.ids.at(s.split_var);
        if (v < 0) reject("split variable missing", s.line, s.col);

        struct Interval {
            std::optional<Rat> lo, hi;
            bool lo_open = false, hi_open = false;
        };
        std::vector<Interval> covered;
        for (const auto& br : s.branches) {
            Interval iv;
            for (const auto& cond : br.conds) {
                Constraint c = ctx.cond_to_constraint(cond);
                Rat a = c.e.coeff_of(v);
                LinExpr rest = c.e;
                rest.coeff.erase(v);
                if (!rest.is_constant() || a == 0 || c.rel == Rel::Eq)
                    reject("branch condition must be an interval bound on the split variable",
                           cond.line, cond.col);
                Rat bound = -rest.c0 / a;
                bool open = c.rel == Rel::Gt;
                if (a > 0) {  // v >= bound
                    if (!iv.lo || bound > *iv.lo) {
                        iv.lo = bound;
                        iv.lo_open = open;
                    }
                } else {  // v <= bound
                    if (!iv.hi || bound < *iv.hi) {
                        iv.hi = bound;
                        iv.hi_open = open;
                    }
                }
            }
            covered.push_back(iv);
        }
        // coverage: every uncovered region must be impossible
        std::sort(covered.begin(), covered.end(), [](const Interval& x, const Interval& y) {
            if (!x.lo) return true;
            if (!y.lo) return false;
            return *x.lo < *y.lo;
        });
        auto region_ok = [&](std::optional<Rat> lo, bool lo_strict_excl, std::optional<Rat> hi,
                             bool hi_strict_excl) {
            // region of points v with lo <? v <? hi that no branch covers
            if (s.split_var == "n" && lo && hi) {
                // gap contains no integer: the split is licensed by integrality
                Rat a = *lo, b = *hi;
                Int k = lo_strict_excl ? floor_rat(a) + 1 : ceil_rat(a);
                bool has_int =
                    (Rat(k) < b) || (Rat(k) == b && !hi_strict_excl);
                if (!has_int) return true;
            }
            LinSystem sys = ctx.store;
            if (lo) {
                LinExpr e = LinExpr::var(v) - LinExpr(*lo);
                sys.add(lo_strict_excl ? gt0(e) : ge0(e));
            }
            if (hi) {
                LinExpr e = LinExpr(*hi) - LinExpr::var(v);
                sys.add(hi_strict_excl ? gt0(e) : ge0(e));
            }
            return !sys.solve().feasible;
        };
        // lower tail
        {
            const Interval& first = covered.front();
            if (first.lo &&
                !region_ok(std::nullopt, false, *first.lo, !first.lo_open))
                reject("branches do not cover the domain below " + rat_str(*first.lo), s.line,
                       s.col);
        }
        // gaps and upper tail, walking the merged coverage
        std::optional<Rat> reach;  // highest covered value so far
        bool reach_open = false;
        bool unbounded = false;
        for (const auto& iv : covered) {
            if (!unbounded && reach) {
                // possible gap (reach, iv.lo)
                if (iv.lo) {
                    bool gap_exists = *iv.lo > *reach || (*iv.lo == *reach && reach_open && iv.lo_open);
                    if (gap_exists &&
                        !region_ok(*reach, !reach_open, *iv.lo, !iv.lo_open))
                        reject("branches leave a gap between " + rat_str(*reach) + " and " +
                                   rat_str(*iv.lo),
                               s.line, s.col);
                }
            }
            if (!iv.hi) {
                unbounded = true;
            } else if (!unbounded) {
                if (!reach || *iv.hi > *reach || (*iv.hi == *reach && !iv.hi_open)) {
                    reach = *iv.hi;
                    reach_open = iv.hi_open;
                }
            }
        }
        if (!unbounded) {
            if (!reach || !region_ok(*reach, !reach_open, std::nullopt, false))
                reject("branches do not cover the domain above " +
                           (reach ? rat_str(*reach) : std::string("-inf")),
                       s.line, s.col);
        }

        // check the branches
        for (std::size_t bi = 0; bi < s.branches.size(); ++bi) {
            const auto& br = s.branches[bi];
            std::size_t mark = ctx.store.size();
            auto products = ctx.products;
            ctx.closed = false;
            for (const auto& cond : br.conds) ctx.store.add(ctx.cond_to_constraint(cond));
            for (const auto& st : br.steps) run_step(st);
            if (!ctx.closed)
                reject("branch " + std::to_string(bi + 1) + " does not reach a contradiction",
                       br.line, br.col);
            ctx.store.truncate(mark);
            ctx.products = std::move(products);
        }
        ctx.closed = true;
    }

    void run_step(const Step& s) {
        if (ctx.closed) reject("step after the certificate closed", s.line, s.col);
        switch (s.kind) {
            case Step::Kind::Ixn: return run_ixn(s);
            case Step::Kind::IxnVal: return run_ixnval(s);
            case Step::Kind::Adjunction: return run_adjunction(s);
            case Step::Kind::MultBound: return run_multbound(s);
            case Step::Kind::Pushforward: return run_pushforward(s);
            case Step::Kind::Glct: return run_glct(s);
            case Step::Kind::MultAxiom: return run_multaxiom(s);
            case Step::Kind::Product: return run_product(s);
            case Step::Kind::MulIneq: return run_mulineq(s);
            case Step::Kind::JiangZou: return run_jiangzou(s);
            case Step::Kind::Derive: return run_derive(s);
            case Step::Kind::Linear: return run_linear(s);
            case Step::Kind::Contradiction: return run_contradiction(s);
            case Step::Kind::CaseSplit: return run_casesplit(s);
        }
        reject("unknown step", s.line, s.col);
    }
};

long theorem_min_n(Theorem t) {
    switch (t) {
        case Theorem::Thm2Inv:
        case Theorem::Thm2Anti: return 2;
        case Theorem::Thm3Inv:
        case Theorem::Thm3Anti: return 1;
        default: return 0;
    }
}

}  // namespace

Verdict check_certificate(const Certificate& cert, const CheckOptions& opt) {
    Ctx ctx(cert);
    int step_index = 0;
    try {
        setup_theorem(ctx);

        if (cert.theorem == Theorem::Thm1 && !cert.domain.empty())
            reject("the glct certificates take no parameter");
        for (const auto& c : cert.domain) ctx.store.add(ctx.cond_to_constraint(c));
        if (ctx.n_id >= 0) {
            LinSystem dom;
            for (const auto& c : cert.domain) dom.add(ctx.cond_to_constraint(c));
            if (!dom.entails(ge0(LinExpr::var(ctx.n_id) - LinExpr(Rat(theorem_min_n(cert.theorem))))))
                reject("domain is weaker than the theorem's range of n");
        }
        if (opt.instantiate_n) {
            if (ctx.n_id < 0) reject("cannot instantiate n: certificate has no parameter");
            ctx.store.add(eq0(LinExpr::var(ctx.n_id) - LinExpr(Rat(*opt.instantiate_n))));
            if (ctx.store.infeasible()) reject("instantiation outside the domain");
        }

        LinExpr thr = ctx.eval_n_only(cert.threshold);
        if (!(thr == ctx.tau)) reject("threshold disagrees with the theorem");

        // locus sanity
        if (cert.locus_in.size() > 2) reject("at most two curves pass through a point");
        for (std::size_t i = 0; i < cert.locus_in.size(); ++i)
            for (std::size_t j = i + 1; j < cert.locus_in.size(); ++j)
                if (ixn_curves(cert.locus_in[i], cert.locus_in[j]) <= 0)
                    reject("locus curves are disjoint: " + cert.locus_in[i] + ", " +
                           cert.locus_in[j]);
        for (const auto& o : cert.locus_out)
            if (ctx.locus_in_x(o)) reject("curve declared both in and out: " + o);

        if (cert.decomp) {
            setup_decomp(ctx);
            if (cert.decomp->level == Level::DownY &&
                (cert.steps.empty() || cert.steps[0].kind != Step::Kind::Pushforward))
                reject("a downstairs decomposition starts with the pushforward step");
        }

        Runner runner{ctx};
        for (const auto& s : cert.steps) {
            ++step_index;
            runner.run_step(s);
        }
        if (!ctx.closed) reject("certificate does not reach a contradiction");
        return Verdict::ok();
    } catch (const CheckFail& f) {
        Verdict v;
        v.valid = false;
        v.reason = f.msg;
        v.step_index = step_index == 0 ? -1 : step_index;
        v.line = f.line;
        v.col = f.col;
        return v;
    } catch (const std::exception& e) {
        Verdict v;
        v.valid = false;
        v.reason = e.what();
        v.step_index = step_index == 0 ? -1 : step_index;
        return v;
    }
}

namespace {

void collect_literals(NumExpr& e, std::vector<Rat*>& out) {
    if (e.kind == NumExpr::Kind::Num) {
        out.push_back(&e.value);
        return;
    }
    for (auto& a : e.args) collect_literals(a, out);
}

void collect_ixn_literals(std::vector<Step>& steps, std::vector<Rat*>& out) {
    for (auto& s : steps) {
        if (s.kind == Step::Kind::Ixn || s.kind == Step::Kind::IxnVal)
            collect_literals(s.value, out);
        for (auto& br : s.branches) collect_ixn_literals(br.steps, out);
    }
}

}  // namespace

MutationReport mutate_and_check(const Certificate& cert) {
    MutationReport rep;
    auto try_mutant = [&](Certificate& m, const std::string& what) {
        ++rep.mutants;
        Verdict v = check_certificate(m);
        if (v.valid)
            rep.accepted.push_back(cert.id + ": " + what);
        else
            ++rep.rejected;
    };
    // count mutation sites on a scratch copy first
    for (int delta : {+1, -1}) {
        {
            Certificate m = cert;
            std::vector<Rat*> lits;
            collect_literals(m.threshold, lits);
            for (std::size_t i = 0; i < lits.size(); ++i) {
                Certificate m2 = cert;
                std::vector<Rat*> l2;
                collect_literals(m2.threshold, l2);
                *l2[i] += delta;
                try_mutant(m2, "threshold literal " + std::to_string(i) + (delta > 0 ? "+1" : "-1"));
            }
        }
        {
            Certificate m = cert;
            std::vector<Rat*> lits;
            collect_ixn_literals(m.steps, lits);
            for (std::size_t i = 0; i < lits.size(); ++i) {
                Certificate m2 = cert;
                std::vector<Rat*> l2;
                collect_ixn_literals(m2.steps, l2);
                *l2[i] += delta;
                try_mutant(m2, "intersection literal " + std::to_string(i) +
                                   (delta > 0 ? "+1" : "-1"));
            }
        }
    }
    return rep;
}

std::optional<long> domain_min_n(const Certificate& cert) {
    if (cert.theorem == Theorem::Thm1) return std::nullopt;
    return theorem_min_n(cert.theorem);
}

std::optional<std::pair<long, Verdict>> instantiation_sweep(const Certificate& cert,
                                                            long max_n) {
    auto lo = domain_min_n(cert);
    if (!lo) return std::nullopt;
    for (long k = *lo; k <= max_n; ++k) {
        CheckOptions opt;
        opt.instantiate_n = k;
        Verdict v = check_certificate(cert, opt);
        if (!v.valid) return std::make_pair(k, v);
    }
    return std::nullopt;
}

}  // namespace bur5
