#include "burniat5/divexpr.hpp"

#include <cctype>
#include <stdexcept>

namespace bur5 {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("divisor expression, column " +
                                    std::to_string(pos + 1) + ": " + msg);
    }
    bool accept(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum((unsigned char)s[pos]))) ++pos;
        if (start == pos) fail("expected a name");
        return s.substr(start, pos - start);
    }
    Rat number() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (start == pos) fail("expected a number");
        Int num(s.substr(start, pos - start));
        if (accept('/')) {
            std::size_t ds = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (ds == pos) fail("expected a denominator");
            Int den(s.substr(ds, pos - ds));
            if (den == 0) fail("zero denominator");
            return Rat(num, den);
        }
        return Rat(num);
    }
    bool number_ahead() {
        skip();
        return pos < s.size() && std::isdigit((unsigned char)s[pos]);
    }
};

const CurveX& upstairs_of_down(const std::string& down, Lexer& lx) {
    for (const auto& c : catalog_x())
        if (c.down == down) return c;
    if (has_curve(down) && lookup(down).mobile)
        lx.fail("lct undefined for general members: " + down);
    lx.fail("unknown curve: " + down);
}

}  // namespace

QDivisorX parse_divisor(const std::string& text) {
    Lexer lx{text};
    QDivisorX d;
    if (lx.eof()) lx.fail("empty divisor expression");
    for (;;) {
        Rat coeff = 1;
        if (lx.number_ahead()) {
            coeff = lx.number();
            if (!lx.accept('*')) lx.fail("expected '*' after the coefficient");
        }
        std::string name = lx.ident();
        if (name == "pull") {
            if (!lx.accept('(')) lx.fail("expected '(' after pull");
            std::string down = lx.ident();
            if (!lx.accept(')')) lx.fail("expected ')'");
            const CurveX& cx = upstairs_of_down(down, lx);
            d.add(cx.name, coeff * cx.ram);  // phi^*(c) = ram * C
        } else if (has_curve_x(name)) {
            d.add(name, coeff);
        } else {
            lx.fail("unknown curve: " + name);
        }
        if (lx.eof()) break;
        if (!lx.accept('+')) lx.fail("expected '+'");
    }
    for (const auto& [n, c] : d.coeffs)
        if (c < 0) throw std::invalid_argument("divisor coefficients must be nonnegative");
    return d;
}

}  // namespace bur5
