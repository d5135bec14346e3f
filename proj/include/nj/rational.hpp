#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <string>

#include "nj/errors.hpp"

namespace nj {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number. cpp_rational keeps the canonical form invariants:
/// gcd(|num|, den) = 1, den >= 1, zero stored as 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline Integer int_pow(const Integer& base, unsigned k) {
    Integer r = 1, b = base;
    for (; k; k >>= 1) {
        if (k & 1) r *= b;
        if (k > 1) b *= b;
    }
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned k) {
    return Rational(int_pow(numerator(base), k), int_pow(denominator(base), k));
}

inline Rational rat_inv(const Rational& x) {
    if (x == 0) throw std::invalid_argument("rat_inv: division by zero");
    return Rational(1) / x;
}

inline Integer factorial(unsigned k) {
    Integer r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "n", "-n" or "n/d" (d > 0) with arbitrary-precision parts.
inline Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    const auto fail = [&](const std::string& msg) -> Rational {
        throw parse_error("malformed rational '" + text + "': " + msg, i);
    };
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    auto digits = [&]() -> Integer {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            fail("digit expected");
        Integer v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            ++i;
        }
        return v;
    };
    Integer num = digits();
    Integer den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = digits();
        if (den == 0) fail("zero denominator");
    }
    if (i != text.size()) fail("trailing characters");
    if (negative) num = -num;
    return Rational(num, den);
}

} // namespace nj
