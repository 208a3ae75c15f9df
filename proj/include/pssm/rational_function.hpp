#pragma once

#include <map>
#include <string>

#include "pssm/polynomial.hpp"

namespace pssm {

// Exact ratio of two polynomials. Canonical form: integer coefficients with
// no common integer factor across numerator and denominator, no common
// monomial factor, positive leading coefficient in the denominator. Equality
// is by cross-multiplication; no polynomial gcd is attempted.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction from(Polynomial p);
    static RationalFunction from(Rational r);
    static RationalFunction from_symbol(Symbol s, SymbolTablePtr table);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& rhs) { return *this = *this + rhs; }
    RationalFunction& operator-=(const RationalFunction& rhs) { return *this = *this - rhs; }
    RationalFunction& operator*=(const RationalFunction& rhs) { return *this = *this * rhs; }

    std::set<Symbol> symbols() const;

    RationalFunction substitute(const std::map<Symbol, RationalFunction>& bindings) const;
    Rational evaluate(const std::map<Symbol, Rational>& bindings) const;

    std::string to_text() const;

private:
    void normalize();

    Polynomial num_;
    Polynomial den_;
};

// True iff lhs.num * rhs.den - rhs.num * lhs.den is the zero polynomial.
bool ratfunc_equal(const RationalFunction& lhs, const RationalFunction& rhs);

}  // namespace pssm
