#pragma once

#include <gmpxx.h>

#include <string>

#include "pssm/error.hpp"

namespace pssm {

// Arbitrary-precision rational. GMP keeps values canonical (positive
// denominator, reduced), which is exactly the invariant we need.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q".
inline Rational rational_from_string(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw Error("bad rational literal: '" + text + "'");
    if (r.get_den() == 0) throw DivisionByZero("rational with zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Exact square root when the value is a perfect square of a rational.
inline bool rational_sqrt(const Rational& r, Rational& out) {
    if (sgn(r) < 0) return false;
    if (!mpz_perfect_square_p(r.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(r.get_den().get_mpz_t()))
        return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den().get_mpz_t());
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

}  // namespace pssm
