#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tba {

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// as long as values are built through the helpers below.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p/q" or a bare integer "n".
inline Rational parse_rational(const std::string& text) {
    try {
        Rational q(text);
        q.canonicalize();
        if (q.get_den() <= 0) throw std::invalid_argument("nonpositive denominator");
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse rational: '" + text + "'");
    }
}

// "p/q", or "n" when the denominator is 1.
inline std::string rational_str(const Rational& q) {
    return q.get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace tba
