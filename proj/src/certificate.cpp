#include "burniat5/certificate.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "burniat5/bicover.hpp"
#include "burniat5/lct.hpp"

namespace bur5 {

std::string theorem_str(Theorem t) {
    switch (t) {
        case Theorem::Thm1: return "thm1";
        case Theorem::Thm2Inv: return "thm2-inv";
        case Theorem::Thm2Anti: return "thm2-anti";
        case Theorem::Thm3Inv: return "thm3-inv";
        case Theorem::Thm3Anti: return "thm3-anti";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const Sexpr& at, const std::string& msg) {
    throw ParseError(at.line, at.col, msg);
}

bool is_rational_atom(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i >= s.size()) return false;
    bool digits = false, slash = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit((unsigned char)s[i])) {
            digits = true;
        } else if (s[i] == '/' && !slash && digits) {
            slash = true;
            digits = false;
        } else {
            return false;
        }
    }
    return digits;
}

Rat parse_rational(const Sexpr& a) {
    std::string s = a.atom;
    bool neg = !s.empty() && s[0] == '-';
    if (neg) s = s.substr(1);
    auto slash = s.find('/');
    Rat r;
    if (slash == std::string::npos)
        r = Rat(Int(s));
    else
        r = Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    return neg ? -r : r;
}

struct VarScope {
    std::set<std::string> vars;  // term variables and product names
    bool allows(const std::string& v) const { return v == "n" || vars.count(v) > 0; }
};

NumExpr parse_num(const Sexpr& e, const VarScope& scope) {
    NumExpr out;
    out.line = e.line;
    out.col = e.col;
    if (!e.is_list) {
        if (is_rational_atom(e.atom)) {
            out.kind = NumExpr::Kind::Num;
            out.value = parse_rational(e);
            return out;
        }
        if (!scope.allows(e.atom)) fail(e, "undeclared variable: " + e.atom);
        out.kind = NumExpr::Kind::Var;
        out.name = e.atom;
        return out;
    }
    std::string h = e.head();
    if (e.items.empty()) fail(e, "empty expression");
    auto sub = [&](std::size_t i) { return parse_num(e.at(i), scope); };
    if (h == "+") {
        if (e.size() < 2) fail(e, "'+' needs arguments");
        out.kind = NumExpr::Kind::Add;
        for (std::size_t i = 1; i < e.size(); ++i) out.args.push_back(sub(i));
        return out;
    }
    if (h == "-") {
        if (e.size() == 2) {
            out.kind = NumExpr::Kind::Neg;
            out.args.push_back(sub(1));
            return out;
        }
        if (e.size() < 3) fail(e, "'-' needs arguments");
        out.kind = NumExpr::Kind::Sub;
        for (std::size_t i = 1; i < e.size(); ++i) out.args.push_back(sub(i));
        return out;
    }
    if (h == "*") {
        if (e.size() < 3) fail(e, "'*' needs two arguments");
        out.kind = NumExpr::Kind::Mul;
        for (std::size_t i = 1; i < e.size(); ++i) out.args.push_back(sub(i));
        return out;
    }
    if (h == "/") {
        if (e.size() != 3) fail(e, "'/' needs two arguments");
        out.kind = NumExpr::Kind::Div;
        out.args.push_back(sub(1));
        out.args.push_back(sub(2));
        return out;
    }
    fail(e, "unknown arithmetic operator: " + h);
}

CmpRel parse_rel(const Sexpr& e, const std::string& h) {
    if (h == "<=") return CmpRel::Le;
    if (h == "<") return CmpRel::Lt;
    if (h == ">=") return CmpRel::Ge;
    if (h == ">") return CmpRel::Gt;
    if (h == "=") return CmpRel::Eq;
    fail(e, "unknown relation: " + h);
}

CondExpr parse_cond(const Sexpr& e, const VarScope& scope) {
    if (!e.is_list || e.size() != 3) fail(e, "expected (rel lhs rhs)");
    CondExpr c;
    c.line = e.line;
    c.col = e.col;
    c.rel = parse_rel(e, e.head());
    c.lhs = parse_num(e.at(1), scope);
    c.rhs = parse_num(e.at(2), scope);
    return c;
}

void require_upstairs_curve(const Sexpr& at, const std::string& name) {
    if (!has_curve_x(name)) fail(at, "unknown curve: " + name);
}

void require_downstairs_rigid(const Sexpr& at, const std::string& name) {
    for (const auto& n : rigid_downstairs())
        if (n == name) return;
    fail(at, "unknown curve: " + name);
}

TestRef parse_test(const Sexpr& e, Level level, const std::string& divisor_name) {
    TestRef t;
    t.line = e.line;
    t.col = e.col;
    if (e.is_list) {
        if (e.head() != "pull" || e.size() != 2) fail(e, "expected (pull <curve>)");
        if (level == Level::DownY) fail(e, "pull() is an upstairs test");
        t.is_pull = true;
        t.name = e.at(1).atom;
        if (!has_curve(t.name)) fail(e.at(1), "unknown curve: " + t.name);
        return t;
    }
    t.name = e.atom;
    if (t.name == divisor_name) {
        t.is_divisor = true;
        return t;
    }
    if (level == Level::DownY) {
        if (!has_curve(t.name)) fail(e, "unknown curve: " + t.name);
    } else {
        require_upstairs_curve(e, t.name);
    }
    return t;
}

struct StepParser {
    Level level;
    std::string divisor_name;
    const std::vector<TermDecl>* terms;
    VarScope scope;

    bool is_term_var(const std::string& v) const {
        if (!terms) return false;
        for (const auto& t : *terms)
            if (t.var == v) return true;
        return false;
    }

    Step parse_step(const Sexpr& e);
    std::vector<Step> parse_steps(const Sexpr& parent, std::size_t first);
};

Step StepParser::parse_step(const Sexpr& e) {
    if (!e.is_list || e.head() != "step") fail(e, "expected (step ...)");
    if (e.size() < 2) fail(e, "step kind missing");
    Step s;
    s.line = e.line;
    s.col = e.col;
    std::string kind = e.at(1).atom;
    auto need_decomp = [&] {
        if (!terms) fail(e, "step requires a decomposition");
    };
    if (kind == "ixn") {
        need_decomp();
        if (e.size() != 5) fail(e, "expected (step ixn <divisor> <test> <value>)");
        s.kind = Step::Kind::Ixn;
        s.lhs = parse_test(e.at(2), level, divisor_name);
        if (!s.lhs.is_divisor) fail(e.at(2), "first argument must name the decomposed divisor");
        s.rhs = parse_test(e.at(3), level, divisor_name);
        s.value = parse_num(e.at(4), scope);
        return s;
    }
    if (kind == "ixnval") {
        if (e.size() != 5) fail(e, "expected (step ixnval <a> <b> <value>)");
        s.kind = Step::Kind::IxnVal;
        s.lhs = parse_test(e.at(2), level, divisor_name);
        s.rhs = parse_test(e.at(3), level, divisor_name);
        s.value = parse_num(e.at(4), scope);
        return s;
    }
    if (kind == "adjunction") {
        need_decomp();
        s.kind = Step::Kind::Adjunction;
        if (e.size() < 3) fail(e, "adjunction needs a curve");
        s.curve = e.at(2).atom;
        if (level == Level::DownY)
            require_downstairs_rigid(e.at(2), s.curve);
        else
            require_upstairs_curve(e.at(2), s.curve);
        s.mode = ConcludeMode::Global;
        for (std::size_t i = 3; i < e.size(); ++i) {
            const Sexpr& p = e.at(i);
            std::string h = p.head();
            if (h == "keep") {
                for (std::size_t j = 1; j < p.size(); ++j) {
                    require_upstairs_curve(p.at(j), p.at(j).atom);
                    s.keep.push_back(p.at(j).atom);
                }
            } else if (h == "sub") {
                for (std::size_t j = 1; j < p.size(); ++j) {
                    if (!is_term_var(p.at(j).atom))
                        fail(p.at(j), "undeclared variable: " + p.at(j).atom);
                    s.sub.push_back(p.at(j).atom);
                }
            } else if (h == "conclude") {
                std::string m = p.at(1).atom;
                if (m == "global")
                    s.mode = ConcludeMode::Global;
                else if (m == "mult")
                    s.mode = ConcludeMode::Mult;
                else
                    fail(p, "conclude mode must be global or mult");
            } else {
                fail(p, "unknown adjunction clause");
            }
        }
        return s;
    }
    if (kind == "multbound") {
        need_decomp();
        if (e.size() != 3) fail(e, "expected (step multbound <curve>)");
        s.kind = Step::Kind::MultBound;
        s.curve = e.at(2).atom;
        if (level == Level::DownY)
            require_downstairs_rigid(e.at(2), s.curve);
        else
            require_upstairs_curve(e.at(2), s.curve);
        return s;
    }
    if (kind == "pushforward") {
        s.kind = Step::Kind::Pushforward;
        return s;
    }
    if (kind == "glct") {
        if (e.size() != 3) fail(e, "expected (step glct del-pezzo|theorem-1)");
        s.kind = Step::Kind::Glct;
        s.glct_base = e.at(2).atom;
        if (s.glct_base != "del-pezzo" && s.glct_base != "theorem-1")
            fail(e.at(2), "unknown glct base");
        return s;
    }
    if (kind == "mult-axiom") {
        s.kind = Step::Kind::MultAxiom;
        return s;
    }
    if (kind == "product") {
        if (e.size() != 5) fail(e, "expected (step product <name> <var> <var>)");
        s.kind = Step::Kind::Product;
        s.pname = e.at(2).atom;
        if (scope.allows(s.pname)) fail(e.at(2), "variable already declared: " + s.pname);
        s.pvar1 = e.at(3).atom;
        s.pvar2 = e.at(4).atom;
        for (const auto* v : {&s.pvar1, &s.pvar2})
            if (!(*v == "n" || is_term_var(*v)))
                fail(e, "product factors must be n or term variables");
        scope.vars.insert(s.pname);
        return s;
    }
    if (kind == "mulineq") {
        if (e.size() != 4) fail(e, "expected (step mulineq (premise ...) (factor ...))");
        s.kind = Step::Kind::MulIneq;
        const Sexpr& prem = e.at(2);
        if (prem.head() != "premise" || prem.size() != 2) fail(prem, "expected (premise <cond>)");
        s.premise = parse_cond(prem.at(1), scope);
        const Sexpr& fac = e.at(3);
        if (fac.head() != "factor" || fac.size() != 2) fail(fac, "expected (factor <expr>)");
        s.factor = parse_num(fac.at(1), scope);
        return s;
    }
    if (kind == "jiangzou") {
        s.kind = Step::Kind::JiangZou;
        bool have_b = false, have_c = false, have_lo = false, have_hi = false, have_i = false;
        for (std::size_t i = 2; i < e.size(); ++i) {
            const Sexpr& p = e.at(i);
            std::string h = p.head();
            auto side = [&](std::vector<std::string>& dst) {
                for (std::size_t j = 1; j < p.size(); ++j) {
                    std::string v = p.at(j).atom;
                    if (v != "Omega" && !is_term_var(v))
                        fail(p.at(j), "undeclared variable: " + v);
                    dst.push_back(v);
                }
            };
            if (h == "bprime") {
                side(s.bprime);
                have_b = true;
            } else if (h == "cside") {
                side(s.cside);
                have_c = true;
            } else if (h == "mlow") {
                s.mlow = parse_num(p.at(1), scope);
                have_lo = true;
            } else if (h == "mhigh") {
                s.mhigh = parse_num(p.at(1), scope);
                have_hi = true;
            } else if (h == "ibound") {
                s.ibound = parse_num(p.at(1), scope);
                have_i = true;
            } else {
                fail(p, "unknown jiangzou clause");
            }
        }
        if (!(have_b && have_c && have_lo && have_hi && have_i))
            fail(e, "jiangzou needs bprime, cside, mlow, mhigh and ibound");
        return s;
    }
    if (kind == "derive") {
        if (e.size() != 3) fail(e, "expected (step derive <cond>)");
        s.kind = Step::Kind::Derive;
        s.claim = parse_cond(e.at(2), scope);
        return s;
    }
    if (kind == "linear") {
        if (e.size() != 4) fail(e, "expected (step linear <cond> (farkas ...))");
        s.kind = Step::Kind::Linear;
        s.claim = parse_cond(e.at(2), scope);
        const Sexpr& f = e.at(3);
        if (f.head() != "farkas") fail(f, "expected (farkas (<mult> <index>)...)");
        s.has_farkas = true;
        for (std::size_t i = 1; i < f.size(); ++i) {
            const Sexpr& m = f.at(i);
            if (!m.is_list || m.size() != 2) fail(m, "expected (<mult> <index>)");
            s.farkas.emplace_back(parse_rational(m.at(0)),
                                  (std::size_t)parse_rational(m.at(1)).convert_to<long>());
        }
        return s;
    }
    if (kind == "contradiction") {
        s.kind = Step::Kind::Contradiction;
        if (e.size() == 3) {
            const Sexpr& f = e.at(2);
            if (f.head() != "farkas") fail(f, "expected (farkas ...)");
            s.has_farkas = true;
            for (std::size_t i = 1; i < f.size(); ++i) {
                const Sexpr& m = f.at(i);
                if (!m.is_list || m.size() != 2) fail(m, "expected (<mult> <index>)");
                s.farkas.emplace_back(parse_rational(m.at(0)),
                                      (std::size_t)parse_rational(m.at(1)).convert_to<long>());
            }
        } else if (e.size() != 2) {
            fail(e, "expected (step contradiction)");
        }
        return s;
    }
    if (kind == "casesplit") {
        if (e.size() < 4) fail(e, "casesplit needs a variable and branches");
        s.kind = Step::Kind::CaseSplit;
        s.split_var = e.at(2).atom;
        if (!(s.split_var == "n" || is_term_var(s.split_var)))
            fail(e.at(2), "undeclared variable: " + s.split_var);
        for (std::size_t i = 3; i < e.size(); ++i) {
            const Sexpr& b = e.at(i);
            if (b.head() != "branch" || b.size() < 3)
                fail(b, "expected (branch (<cond>...) <step>...)");
            Step::Branch br;
            br.line = b.line;
            br.col = b.col;
            const Sexpr& conds = b.at(1);
            if (!conds.is_list) fail(conds, "expected a condition list");
            for (const auto& c : conds.items) br.conds.push_back(parse_cond(c, scope));
            StepParser inner = *this;  // branch-local variable scope
            br.steps = inner.parse_steps(b, 2);
            s.branches.push_back(std::move(br));
        }
        return s;
    }
    fail(e, "unknown step kind: " + kind);
}

std::vector<Step> StepParser::parse_steps(const Sexpr& parent, std::size_t first) {
    std::vector<Step> out;
    for (std::size_t i = first; i < parent.size(); ++i) out.push_back(parse_step(parent.at(i)));
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].kind == Step::Kind::CaseSplit)
            fail(parent.at(first + i), "casesplit must be the final step");
    return out;
}

Theorem theorem_from_id(const Sexpr& at, const std::string& id) {
    if (id.rfind("thm1-", 0) == 0) return Theorem::Thm1;
    if (id.rfind("thm2-inv", 0) == 0) return Theorem::Thm2Inv;
    if (id.rfind("thm2-anti-", 0) == 0) return Theorem::Thm2Anti;
    if (id.rfind("thm3-inv-", 0) == 0) return Theorem::Thm3Inv;
    if (id.rfind("thm3-anti-", 0) == 0) return Theorem::Thm3Anti;
    fail(at, "certificate id must start with a theorem tag: " + id);
}

Decomp parse_decomp(const Sexpr& e, VarScope& scope) {
    Decomp d;
    d.line = e.line;
    d.col = e.col;
    if (e.size() < 3) fail(e, "decompose needs a divisor name and a class");
    d.divisor = e.at(1).atom;
    if (d.divisor == "D")
        d.level = Level::FullX;
    else if (d.divisor == "Dp")
        d.level = Level::MobileX;
    else if (d.divisor == "d")
        d.level = Level::DownY;
    else
        fail(e.at(1), "divisor name must be D, Dp or d");
    const Sexpr& cls = e.at(2);
    if (cls.head() != "class" || cls.size() != 2) fail(cls, "expected (class <expr>)");
    d.class_expr = cls.at(1);
    std::set<std::string> curves;
    for (std::size_t i = 3; i < e.size(); ++i) {
        const Sexpr& p = e.at(i);
        std::string h = p.head();
        if (h == "term") {
            if (p.size() != 4) fail(p, "expected (term <var> <curve> (>= <var> <bound>))");
            TermDecl t;
            t.line = p.line;
            t.col = p.col;
            t.var = p.at(1).atom;
            if (t.var == "n" || t.var == "Omega" || scope.vars.count(t.var))
                fail(p.at(1), "variable already declared: " + t.var);
            t.curve = p.at(2).atom;
            if (d.level == Level::DownY)
                require_downstairs_rigid(p.at(2), t.curve);
            else
                require_upstairs_curve(p.at(2), t.curve);
            if (curves.count(t.curve)) fail(p.at(2), "curve decomposed twice: " + t.curve);
            curves.insert(t.curve);
            const Sexpr& lb = p.at(3);
            if (lb.head() != ">=" || lb.size() != 3 || lb.at(1).atom != t.var)
                fail(lb, "expected (>= <var> <bound>)");
            t.lower = parse_rational(lb.at(2));
            if (t.lower < 0) fail(lb, "term lower bounds must be nonnegative");
            scope.vars.insert(t.var);
            d.terms.push_back(std::move(t));
        } else if (h == "residual") {
            if (p.size() < 2 || p.at(1).atom != "Omega")
                fail(p, "expected (residual Omega (exclude ...))");
            d.has_omega = true;
            for (std::size_t j = 2; j < p.size(); ++j) {
                const Sexpr& x = p.at(j);
                if (x.head() != "exclude") fail(x, "expected (exclude <curve>...)");
                for (std::size_t k = 1; k < x.size(); ++k) d.exclude.push_back(x.at(k).atom);
            }
        } else {
            fail(p, "unknown decompose clause");
        }
    }
    // The residual excludes exactly the decomposed curves.
    if (d.has_omega) {
        std::set<std::string> ex(d.exclude.begin(), d.exclude.end());
        if (ex != curves)
            fail(e, "residual exclusion set must list exactly the decomposed curves");
    }
    return d;
}

}  // namespace

Certificate parse_certificate(const std::string& text) {
    auto tops = parse_sexprs(text);
    if (tops.size() != 1) {
        int ln = tops.empty() ? 1 : tops[1].line;
        throw ParseError(ln, 1, "expected a single (certificate ...) form");
    }
    const Sexpr& e = tops[0];
    if (e.head() != "certificate") fail(e, "expected (certificate ...)");
    if (e.size() < 2 || e.at(1).is_list || !e.at(1).was_string)
        fail(e, "certificate id string missing");
    Certificate c;
    c.id = e.at(1).atom;
    c.theorem = theorem_from_id(e.at(1), c.id);
    VarScope scope;
    bool seen_domain = false, seen_threshold = false, seen_locus = false;
    std::vector<const Sexpr*> step_forms;
    for (std::size_t i = 2; i < e.size(); ++i) {
        const Sexpr& p = e.at(i);
        std::string h = p.head();
        if (h == "domain") {
            seen_domain = true;
            VarScope nonly;  // domain constraints restrict n only
            for (std::size_t j = 1; j < p.size(); ++j)
                c.domain.push_back(parse_cond(p.at(j), nonly));
        } else if (h == "threshold") {
            if (p.size() != 2) fail(p, "expected (threshold <expr>)");
            VarScope nonly;
            c.threshold = parse_num(p.at(1), nonly);
            seen_threshold = true;
        } else if (h == "locus") {
            seen_locus = true;
            for (std::size_t j = 1; j < p.size(); ++j) {
                const Sexpr& q = p.at(j);
                std::string qh = q.head();
                if (qh == "in") {
                    require_upstairs_curve(q.at(1), q.at(1).atom);
                    c.locus_in.push_back(q.at(1).atom);
                } else if (qh == "out") {
                    require_upstairs_curve(q.at(1), q.at(1).atom);
                    c.locus_out.push_back(q.at(1).atom);
                } else if (qh == "offbranch") {
                    c.offbranch = true;
                } else if (qh == "offfixed") {
                    c.offfixed = true;
                } else {
                    fail(q, "unknown locus clause");
                }
            }
        } else if (h == "decompose") {
            if (c.decomp) fail(p, "duplicate decompose block");
            c.decomp = parse_decomp(p, scope);
        } else if (h == "step") {
            step_forms.push_back(&p);
        } else {
            fail(p, "unknown certificate clause: " + h);
        }
    }
    if (!seen_domain) fail(e, "missing (domain ...)");
    if (!seen_threshold) fail(e, "missing (threshold ...)");
    if (!seen_locus) fail(e, "missing (locus ...)");
    if (step_forms.empty()) fail(e, "certificate proves nothing");

    StepParser sp;
    sp.level = c.decomp ? c.decomp->level : Level::FullX;
    sp.divisor_name = c.decomp ? c.decomp->divisor : "";
    sp.terms = c.decomp ? &c.decomp->terms : nullptr;
    sp.scope = scope;
    for (const Sexpr* f : step_forms) c.steps.push_back(sp.parse_step(*f));
    for (std::size_t i = 0; i + 1 < c.steps.size(); ++i)
        if (c.steps[i].kind == Step::Kind::CaseSplit)
            fail(*step_forms[i], "casesplit must be the final step");
    return c;
}

Certificate parse_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_certificate(ss.str());
}

}  // namespace bur5
