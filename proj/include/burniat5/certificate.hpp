#pragma once

#include <optional>
#include <string>
#include <vector>

#include "burniat5/rational.hpp"
#include "burniat5/sexpr.hpp"

namespace bur5 {

enum class Theorem { Thm1, Thm2Inv, Thm2Anti, Thm3Inv, Thm3Anti };
std::string theorem_str(Theorem t);

// Which divisor the decomposition splits:
//   FullX   - the full divisor D on X (fixed part folded into the terms)
//   MobileX - the moving part D' after peeling off the eigenpart's fixed part
//   DownY   - the image divisor d on Y (pushforward arguments)
enum class Level { FullX, MobileX, DownY };

// Arithmetic expression tree over rational literals, n, and declared
// variables. Kept as a tree so the mutation harness can perturb literals.
struct NumExpr {
    enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg };
    Kind kind = Kind::Num;
    Rat value;            // Num
    std::string name;     // Var
    std::vector<NumExpr> args;
    int line = 0, col = 0;
};

enum class CmpRel { Le, Lt, Ge, Gt, Eq };

struct CondExpr {
    NumExpr lhs, rhs;
    CmpRel rel = CmpRel::Le;
    int line = 0, col = 0;
};

struct TestRef {
    bool is_pull = false;   // pull(<downstairs name>) on X
    bool is_divisor = false;  // refers to the decomposed divisor by name
    std::string name;
    int line = 0, col = 0;
};

struct TermDecl {
    std::string var;
    std::string curve;
    Rat lower = 0;
    int line = 0, col = 0;
};

struct Decomp {
    Level level = Level::FullX;
    std::string divisor;            // D, Dp or d
    Sexpr class_expr;               // audited against the theorem-derived class
    std::vector<TermDecl> terms;
    bool has_omega = false;
    std::vector<std::string> exclude;
    int line = 0, col = 0;
};

enum class ConcludeMode { Global, Mult };

struct Step {
    enum class Kind {
        Ixn,
        IxnVal,
        Adjunction,
        MultBound,
        Pushforward,
        Glct,
        MultAxiom,
        Product,
        MulIneq,
        JiangZou,
        Derive,
        Linear,
        Contradiction,
        CaseSplit,
    };
    Kind kind = Kind::Contradiction;
    int line = 0, col = 0;

    // Ixn / IxnVal
    TestRef lhs, rhs;     // Ixn: lhs = divisor, rhs = test; IxnVal: both tests
    NumExpr value;

    // Adjunction / MultBound
    std::string curve;
    std::vector<std::string> keep;
    std::vector<std::string> sub;   // term variables dropped from the boundary
    ConcludeMode mode = ConcludeMode::Global;

    // Glct
    std::string glct_base;  // "del-pezzo" or "theorem-1"

    // Product
    std::string pname, pvar1, pvar2;

    // MulIneq
    CondExpr premise;
    NumExpr factor;

    // Derive / Linear / Contradiction
    CondExpr claim;
    bool has_farkas = false;
    std::vector<std::pair<Rat, std::size_t>> farkas;

    // JiangZou: entries are term variables or "Omega"
    std::vector<std::string> bprime, cside;
    NumExpr mlow, mhigh, ibound;

    // CaseSplit
    std::string split_var;
    struct Branch {
        std::vector<CondExpr> conds;
        std::vector<Step> steps;
        int line = 0, col = 0;
    };
    std::vector<Branch> branches;
};

struct Certificate {
    std::string id;
    Theorem theorem = Theorem::Thm1;
    std::vector<CondExpr> domain;     // constraints on n
    NumExpr threshold;
    std::vector<std::string> locus_in, locus_out;
    bool offbranch = false, offfixed = false;
    std::optional<Decomp> decomp;
    std::vector<Step> steps;
};

// Parses and name-resolves one certificate; throws ParseError with position.
Certificate parse_certificate(const std::string& text);
Certificate parse_certificate_file(const std::string& path);

}  // namespace bur5
