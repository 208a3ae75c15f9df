#include "pssm/rational_function.hpp"

#include <sstream>

namespace pssm {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
}

RationalFunction RationalFunction::from(Polynomial p) {
    auto table = p.table();
    return RationalFunction(std::move(p), Polynomial::constant(1, table));
}

RationalFunction RationalFunction::from(Rational r) {
    return RationalFunction(Polynomial::constant(std::move(r)), Polynomial::constant(1));
}

RationalFunction RationalFunction::from_symbol(Symbol s, SymbolTablePtr table) {
    return from(Polynomial::symbol(s, std::move(table)));
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(1, den_.table());
        return;
    }
    // Common monomial factor.
    Monomial shared = num_.monomial_content().gcd(den_.monomial_content());
    if (!shared.is_one()) {
        num_ = *num_.divide_by_monomial(shared);
        den_ = *den_.divide_by_monomial(shared);
    }
    // Joint rational content: leaves integer coefficients with no common
    // integer factor across the two parts.
    Rational cn = num_.content(), cd = den_.content();
    Rational scale = cn / cd;  // num/den == scale * (num/cn) / (den/cd)
    num_ = num_.scaled(Rational(1) / cn);
    den_ = den_.scaled(Rational(1) / cd);
    num_ = num_.scaled(Rational(scale.get_num()));
    den_ = den_.scaled(Rational(scale.get_den()));
    // Positive leading coefficient in the denominator.
    if (sgn(den_.leading_term().second) < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw DivisionByZero("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::set<Symbol> RationalFunction::symbols() const {
    std::set<Symbol> out = num_.symbols();
    auto d = den_.symbols();
    out.insert(d.begin(), d.end());
    return out;
}

RationalFunction RationalFunction::substitute(const std::map<Symbol, RationalFunction>& bindings) const {
    RationalFunction n = poly_substitute(num_, bindings);
    RationalFunction d = poly_substitute(den_, bindings);
    if (d.is_zero()) throw DegenerateSubstitution("denominator vanished under substitution");
    return n / d;
}

Rational RationalFunction::evaluate(const std::map<Symbol, Rational>& bindings) const {
    Rational d = den_.evaluate(bindings);
    if (sgn(d) == 0) throw DivisionByZero("denominator evaluates to zero");
    return num_.evaluate(bindings) / d;
}

std::string RationalFunction::to_text() const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.to_text();
    std::ostringstream os;
    os << "(" << num_.to_text() << ")/(" << den_.to_text() << ")";
    return os.str();
}

bool ratfunc_equal(const RationalFunction& lhs, const RationalFunction& rhs) {
    return (lhs.num() * rhs.den() - rhs.num() * lhs.den()).is_zero();
}

}  // namespace pssm
