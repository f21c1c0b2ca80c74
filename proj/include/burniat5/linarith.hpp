#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "burniat5/rational.hpp"

namespace bur5 {

// Affine expression c0 + sum(coeff[v] * x_v) over integer variable ids.
struct LinExpr {
    Rat c0;
    std::map<int, Rat> coeff;

    LinExpr() = default;
    explicit LinExpr(Rat c) : c0(std::move(c)) {}
    static LinExpr var(int v, Rat c = Rat(1)) {
        LinExpr e;
        if (c != 0) e.coeff[v] = std::move(c);
        return e;
    }

    bool is_constant() const { return coeff.empty(); }
    Rat coeff_of(int v) const {
        auto it = coeff.find(v);
        return it == coeff.end() ? Rat(0) : it->second;
    }

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(const Rat& s);
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(LinExpr a, const Rat& s) { return a *= s; }
    friend bool operator==(const LinExpr& a, const LinExpr& b) {
        return a.c0 == b.c0 && a.coeff == b.coeff;
    }

    LinExpr substituted(int v, const LinExpr& by) const;
    Rat eval(const std::map<int, Rat>& assign) const;
    std::string str(const std::vector<std::string>& names) const;
};

// Relation of expr against 0.
enum class Rel { Ge, Gt, Eq };  // expr >= 0, expr > 0, expr == 0

struct Constraint {
    LinExpr e;
    Rel rel = Rel::Ge;
    std::string str(const std::vector<std::string>& names) const;
};

inline Constraint ge0(LinExpr e) { return {std::move(e), Rel::Ge}; }
inline Constraint gt0(LinExpr e) { return {std::move(e), Rel::Gt}; }
inline Constraint eq0(LinExpr e) { return {std::move(e), Rel::Eq}; }

// Result of a feasibility query: either a witness assignment or infeasible.
struct FeasResult {
    bool feasible = false;
    std::map<int, Rat> witness;  // meaningful when feasible
};

// Conjunction of constraints over exact rationals. Decision by
// Fourier-Motzkin elimination; sound and complete over Q.
class LinSystem {
  public:
    void add(Constraint c) { cs_.push_back(std::move(c)); }
    const std::vector<Constraint>& constraints() const { return cs_; }
    std::size_t size() const { return cs_.size(); }
    void truncate(std::size_t n) { cs_.resize(n); }

    FeasResult solve() const;
    bool infeasible() const { return !solve().feasible; }

    // True if every rational solution of the system satisfies c.
    bool entails(const Constraint& c) const;

    // Validates that the nonnegative combination sum(mult_i * cs_[idx_i])
    // yields the claim (equality constraints may take multipliers of either
    // sign). Returns an error message, or empty string on success.
    std::string check_farkas(const std::vector<std::pair<Rat, std::size_t>>& mults,
                             const Constraint& claim) const;
    // Same, but the combination must produce a contradiction (0 > 0 or c >= 0
    // with c < 0).
    std::string check_farkas_infeasible(
        const std::vector<std::pair<Rat, std::size_t>>& mults) const;

  private:
    std::vector<Constraint> cs_;
};

Constraint negate_ge_or_gt(const Constraint& c);

}  // namespace bur5
