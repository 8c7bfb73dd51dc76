#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frobrec {

// Exact arithmetic everywhere; no floating point in the core.
using Rational = mpq_class;

// Lowest terms, sign on the numerator, no "/1" (e.g. "2", "-1/96").
inline std::string rat_str(const Rational& q) { return q.get_str(); }

// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline Rational rat_int(long n) { return Rational(n); }

inline Rational rat_frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// n! as an exact integer value.
inline Rational rat_factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline bool rat_is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace frobrec
