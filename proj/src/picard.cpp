#include "burniat5/picard.hpp"

#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "burniat5/linarith.hpp"

namespace bur5 {

DivClass& DivClass::operator+=(const DivClass& o) {
    for (int i = 0; i < 5; ++i) c[i] += o.c[i];
    return *this;
}

DivClass& DivClass::operator-=(const DivClass& o) {
    for (int i = 0; i < 5; ++i) c[i] -= o.c[i];
    return *this;
}

DivClass operator*(const Rat& s, DivClass a) {
    for (int i = 0; i < 5; ++i) a.c[i] *= s;
    return a;
}

bool DivClass::is_integral() const {
    for (const auto& q : c)
        if (!is_integer(q)) return false;
    return true;
}

std::string DivClass::str() const {
    static const char* names[5] = {"l", "e1", "e2", "e3", "e4"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 5; ++i) {
        if (c[i] == 0) continue;
        if (first) {
            if (c[i] == 1)
                os << names[i];
            else if (c[i] == -1)
                os << "-" << names[i];
            else
                os << rat_str(c[i]) << "*" << names[i];
            first = false;
        } else {
            if (c[i] > 0)
                os << " + " << (c[i] == 1 ? std::string(names[i])
                                          : rat_str(c[i]) + "*" + names[i]);
            else
                os << " - " << (c[i] == -1 ? std::string(names[i])
                                           : rat_str(-c[i]) + "*" + names[i]);
        }
    }
    if (first) os << "0";
    return os.str();
}

Rat pair(const DivClass& a, const DivClass& b) {
    Rat r = a.c[0] * b.c[0];
    for (int i = 1; i < 5; ++i) r -= a.c[i] * b.c[i];
    return r;
}

DivClass canonical_class() { return DivClass(-3, 1, 1, 1, 1); }

const std::vector<DivClass>& negative_curves() {
    static const std::vector<DivClass> curves = [] {
        std::vector<DivClass> v;
        for (int i = 1; i <= 4; ++i) {
            DivClass e;
            e.c[i] = 1;
            v.push_back(e);
        }
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                DivClass h;
                h.c[0] = 1;
                h.c[i] = -1;
                h.c[j] = -1;
                v.push_back(h);
            }
        return v;
    }();
    return curves;
}

namespace {

// Functional y -> pair(y, C) as a covector.
std::array<Rat, 5> functional(const DivClass& C) {
    return {C.c[0], -C.c[1], -C.c[2], -C.c[3], -C.c[4]};
}

Rat dot(const std::array<Rat, 5>& f, const std::array<Rat, 5>& y) {
    Rat r = 0;
    for (int i = 0; i < 5; ++i) r += f[i] * y[i];
    return r;
}

void make_primitive(std::array<Rat, 5>& y) {
    Int lcm = 1;
    for (const auto& q : y) lcm = boost::multiprecision::lcm(lcm, denominator(q));
    Int g = 0;
    std::array<Int, 5> num;
    for (int i = 0; i < 5; ++i) {
        num[i] = numerator(y[i]) * (lcm / denominator(y[i]));
        g = boost::multiprecision::gcd(g, num[i]);
    }
    if (g == 0) g = 1;
    for (int i = 0; i < 5; ++i) y[i] = Rat(num[i] / g);
}

// Exact double description for the cone {y : f_i(y) >= 0}. The functionals
// span the space, so the cone is pointed and the incremental algorithm with
// the combinatorial adjacency test suffices at this scale.
std::vector<std::array<Rat, 5>> dual_rays(const std::vector<std::array<Rat, 5>>& fs) {
    const int dim = 5;
    // Seed with dim independent functionals (Gauss over exact rationals).
    std::vector<std::size_t> seed;
    std::vector<std::array<Rat, 5>> basis;
    for (std::size_t k = 0; k < fs.size() && seed.size() < (std::size_t)dim; ++k) {
        std::vector<std::array<Rat, 5>> trial = basis;
        trial.push_back(fs[k]);
        // rank check by elimination
        auto m = trial;
        std::size_t rank = 0;
        for (int col = 0; col < dim && rank < m.size(); ++col) {
            std::size_t piv = rank;
            while (piv < m.size() && m[piv][col] == 0) ++piv;
            if (piv == m.size()) continue;
            std::swap(m[rank], m[piv]);
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (r == rank || m[r][col] == 0) continue;
                Rat f = m[r][col] / m[rank][col];
                for (int c = 0; c < dim; ++c) m[r][c] -= f * m[rank][c];
            }
            ++rank;
        }
        if (rank == trial.size()) {
            basis = trial;
            seed.push_back(k);
        }
    }
    if (basis.size() != (std::size_t)dim)
        throw std::logic_error("dual_rays: functionals do not span");

    // Invert the seed matrix: rays r_j with f_seed_i(r_j) = delta_ij.
    std::vector<std::array<Rat, 10>> aug(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) aug[i][j] = basis[i][j];
        for (int j = 0; j < dim; ++j) aug[i][5 + j] = (i == j) ? 1 : 0;
    }
    for (int col = 0; col < dim; ++col) {
        int piv = col;
        while (aug[piv][col] == 0) ++piv;
        std::swap(aug[col], aug[piv]);
        Rat d = aug[col][col];
        for (int c = 0; c < 10; ++c) aug[col][c] /= d;
        for (int r = 0; r < dim; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rat f = aug[r][col];
            for (int c = 0; c < 10; ++c) aug[r][c] -= f * aug[col][c];
        }
    }

    struct Ray {
        std::array<Rat, 5> y;
        std::set<std::size_t> zero;  // processed constraints vanishing on it
    };
    std::vector<Ray> rays;
    for (int j = 0; j < dim; ++j) {
        Ray r;
        for (int i = 0; i < dim; ++i) r.y[i] = aug[i][5 + j];
        make_primitive(r.y);
        rays.push_back(std::move(r));
    }
    std::set<std::size_t> processed(seed.begin(), seed.end());
    for (std::size_t k : processed)
        for (auto& r : rays)
            if (dot(fs[k], r.y) == 0) r.zero.insert(k);

    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (processed.count(k)) continue;
        std::vector<Ray> pos, neg, zero;
        for (auto& r : rays) {
            Rat v = dot(fs[k], r.y);
            if (v > 0)
                pos.push_back(r);
            else if (v < 0)
                neg.push_back(r);
            else {
                r.zero.insert(k);
                zero.push_back(r);
            }
        }
        std::vector<Ray> next = pos;
        for (auto& z : zero) next.push_back(z);
        auto rank_of = [&](const std::set<std::size_t>& idxs) {
            std::vector<std::array<Rat, 5>> m;
            for (auto idx : idxs) m.push_back(fs[idx]);
            std::size_t rank = 0;
            for (int col = 0; col < dim && rank < m.size(); ++col) {
                std::size_t piv = rank;
                while (piv < m.size() && m[piv][col] == 0) ++piv;
                if (piv == m.size()) continue;
                std::swap(m[rank], m[piv]);
                for (std::size_t r = rank + 1; r < m.size(); ++r) {
                    if (m[r][col] == 0) continue;
                    Rat f = m[r][col] / m[rank][col];
                    for (int c = 0; c < dim; ++c) m[r][c] -= f * m[rank][c];
                }
                ++rank;
            }
            return rank;
        };
        for (const auto& p : pos)
            for (const auto& n : neg) {
                // algebraic adjacency: the common zero set cuts a 2-face
                std::set<std::size_t> common;
                std::set_intersection(p.zero.begin(), p.zero.end(), n.zero.begin(),
                                      n.zero.end(), std::inserter(common, common.begin()));
                if (rank_of(common) != (std::size_t)(dim - 2)) continue;
                Ray w;
                Rat fp = dot(fs[k], p.y), fn = dot(fs[k], n.y);
                for (int i = 0; i < 5; ++i) w.y[i] = fp * n.y[i] - fn * p.y[i];
                make_primitive(w.y);
                std::set_intersection(p.zero.begin(), p.zero.end(), n.zero.begin(),
                                      n.zero.end(), std::inserter(w.zero, w.zero.begin()));
                w.zero.insert(k);
                next.push_back(std::move(w));
            }
        rays = std::move(next);
        processed.insert(k);
        // dedupe
        std::vector<Ray> uniq;
        for (auto& r : rays) {
            bool dup = false;
            for (const auto& u : uniq)
                if (u.y == r.y) {
                    dup = true;
                    break;
                }
            if (!dup) uniq.push_back(std::move(r));
        }
        rays = std::move(uniq);
    }
    std::vector<std::array<Rat, 5>> out;
    for (auto& r : rays) out.push_back(r.y);
    return out;
}

std::vector<DivClass> compute_nef_rays() {
    std::vector<std::array<Rat, 5>> fs;
    for (const auto& C : negative_curves()) fs.push_back(functional(C));
    auto raw = dual_rays(fs);
    std::vector<DivClass> out;
    for (const auto& y : raw) {
        DivClass d;
        d.c = y;
        out.push_back(d);
    }
    return out;
}

}  // namespace

const std::vector<DivClass>& nef_rays() {
    static std::vector<DivClass> rays;
    static std::once_flag once;
    std::call_once(once, [] { rays = compute_nef_rays(); });
    return rays;
}

bool is_effective(const DivClass& c) {
    // Feasibility of c = sum x_i C_i, x_i >= 0, over exact rationals.
    LinSystem sys;
    const auto& curves = negative_curves();
    for (std::size_t i = 0; i < curves.size(); ++i)
        sys.add(ge0(LinExpr::var((int)i)));
    for (int coord = 0; coord < 5; ++coord) {
        LinExpr e(Rat(-1) * c.c[coord]);
        for (std::size_t i = 0; i < curves.size(); ++i) {
            Rat cc = curves[i].c[coord];
            if (cc != 0) e += LinExpr::var((int)i, cc);
        }
        sys.add(eq0(e));
    }
    return sys.solve().feasible;
}

std::optional<DivClass> reduce_to_nef(const DivClass& c0) {
    if (!c0.is_integral())
        throw std::invalid_argument("reduction requires an integral class");
    DivClass c = c0;
    const DivClass mK = Rat(-1) * canonical_class();
    for (;;) {
        if (pair(c, mK) < 0) return std::nullopt;  // -K is ample
        const DivClass* neg = nullptr;
        for (const auto& C : negative_curves())
            if (pair(c, C) < 0) {
                neg = &C;
                break;
            }
        if (!neg) break;
        c -= *neg;  // drops the (-K)-degree by exactly 1, so this terminates
    }
    for (const auto& ray : nef_rays())
        if (pair(c, ray) < 0) return std::nullopt;
    return c;
}

bool is_effective_reduction(const DivClass& c) { return reduce_to_nef(c).has_value(); }

long h0(const DivClass& c) {
    if (!c.is_integral()) throw std::invalid_argument("h0 requires an integral class");
    auto nef = reduce_to_nef(c);
    if (!nef) return 0;
    Rat chi = 1 + (pair(*nef, *nef) - pair(*nef, canonical_class())) / 2;
    if (!is_integer(chi) || chi < 0) throw std::logic_error("h0: bad Riemann-Roch value");
    return (long)numerator(chi);
}

}  // namespace bur5
