#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace bur5 {

// All arithmetic in this project is exact. Floating point never enters the
// public surface; any appearance of it is a bug.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline Int floor_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

inline Int ceil_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int c = n / d;
    if (n % d != 0 && n > 0) c += 1;
    return c;
}

inline std::string rat_str(const Rat& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace bur5
