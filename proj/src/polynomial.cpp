#include "pssm/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "pssm/rational_function.hpp"

namespace pssm {

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [s, e] : powers_) d += e;
    return d;
}

unsigned Monomial::degree_of(Symbol s) const {
    for (const auto& [sym, e] : powers_)
        if (sym == s) return e;
    return 0;
}

Monomial Monomial::times(const Monomial& rhs) const {
    Monomial out;
    auto a = powers_.begin(), b = rhs.powers_.begin();
    while (a != powers_.end() || b != rhs.powers_.end()) {
        if (b == rhs.powers_.end() || (a != powers_.end() && a->first < b->first)) {
            out.powers_.push_back(*a++);
        } else if (a == powers_.end() || b->first < a->first) {
            out.powers_.push_back(*b++);
        } else {
            out.powers_.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    return out;
}

Monomial Monomial::gcd(const Monomial& rhs) const {
    Monomial out;
    auto a = powers_.begin(), b = rhs.powers_.begin();
    while (a != powers_.end() && b != rhs.powers_.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            out.powers_.emplace_back(a->first, std::min(a->second, b->second));
            ++a, ++b;
        }
    }
    return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
    Monomial out;
    auto a = powers_.begin();
    auto b = divisor.powers_.begin();
    while (b != divisor.powers_.end()) {
        while (a != powers_.end() && a->first < b->first) out.powers_.push_back(*a++);
        if (a == powers_.end() || b->first < a->first || a->second < b->second) return std::nullopt;
        if (a->second > b->second) out.powers_.emplace_back(a->first, a->second - b->second);
        ++a, ++b;
    }
    while (a != powers_.end()) out.powers_.push_back(*a++);
    return out;
}

std::optional<Monomial> Monomial::sqrt() const {
    Monomial out;
    for (const auto& [s, e] : powers_) {
        if (e % 2 != 0) return std::nullopt;
        out.powers_.emplace_back(s, e / 2);
    }
    return out;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    const unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    auto pa = a.powers_.begin(), pb = b.powers_.begin();
    while (pa != a.powers_.end() || pb != b.powers_.end()) {
        // First symbol id (creation order) where the exponents differ decides;
        // the smaller exponent sorts first.
        if (pb == b.powers_.end() || (pa != a.powers_.end() && pa->first < pb->first)) {
            return 1;  // a positive where b is zero
        }
        if (pa == a.powers_.end() || pb->first < pa->first) {
            return -1;
        }
        if (pa->second != pb->second) return pa->second < pb->second ? -1 : 1;
        ++pa, ++pb;
    }
    return 0;
}

SymbolTablePtr merge_tables(const SymbolTablePtr& a, const SymbolTablePtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    throw Error("polynomials over different symbol universes");
}

Polynomial Polynomial::constant(Rational value, SymbolTablePtr table) {
    Polynomial p;
    p.table_ = std::move(table);
    if (sgn(value) != 0) p.terms_.emplace(Monomial::one(), std::move(value));
    return p;
}

Polynomial Polynomial::symbol(Symbol s, SymbolTablePtr table) {
    Polynomial p;
    p.table_ = std::move(table);
    p.terms_.emplace(Monomial(s), Rational(1));
    return p;
}

Polynomial Polynomial::term(Rational coeff, Monomial m, SymbolTablePtr table) {
    Polynomial p;
    p.table_ = std::move(table);
    if (sgn(coeff) != 0) p.terms_.emplace(std::move(m), std::move(coeff));
    return p;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

unsigned Polynomial::degree_in(Symbol s) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_of(s));
    return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::set<Symbol> Polynomial::symbols() const {
    std::set<Symbol> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [s, e] : m.powers()) out.insert(s);
    return out;
}

void Polynomial::insert_term(const Monomial& m, const Rational& c) {
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out;
    out.table_ = table_;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    table_ = merge_tables(table_, rhs.table_);
    for (const auto& [m, c] : rhs.terms_) insert_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    table_ = merge_tables(table_, rhs.table_);
    for (const auto& [m, c] : rhs.terms_) insert_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    Polynomial out;
    out.table_ = merge_tables(lhs.table_, rhs.table_);
    for (const auto& [ma, ca] : lhs.terms_)
        for (const auto& [mb, cb] : rhs.terms_) out.insert_term(ma.times(mb), ca * cb);
    return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
    if (sgn(factor) == 0) return Polynomial::constant(0, table_);
    Polynomial out;
    out.table_ = table_;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial out = Polynomial::constant(1, table_);
    for (unsigned i = 0; i < e; ++i) out *= *this;
    return out;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return Rational(1);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    return content;
}

Polynomial Polynomial::divided_by_content(Rational& content_out) const {
    content_out = content();
    if (terms_.empty()) return *this;
    return scaled(Rational(1) / content_out);
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return Monomial::one();
    auto it = terms_.begin();
    Monomial g = it->first;
    for (++it; it != terms_.end() && !g.is_one(); ++it) g = g.gcd(it->first);
    return g;
}

std::optional<Polynomial> Polynomial::divide_by_monomial(const Monomial& m) const {
    Polynomial out;
    out.table_ = table_;
    for (const auto& [mono, c] : terms_) {
        auto q = mono.divide(m);
        if (!q) return std::nullopt;
        out.terms_.emplace(*q, c);
    }
    return out;
}

std::pair<Monomial, Rational> Polynomial::leading_term() const {
    if (terms_.empty()) return {Monomial::one(), Rational(0)};
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
    Polynomial r = *this;
    Polynomial q;
    q.table_ = merge_tables(table_, divisor.table_);
    const auto [dm, dc] = divisor.leading_term();
    while (!r.is_zero()) {
        const auto [rm, rc] = r.leading_term();
        auto m = rm.divide(dm);
        if (!m) return std::nullopt;
        Polynomial t = Polynomial::term(rc / dc, *m, q.table_);
        q += t;
        r -= t * divisor;
    }
    return q;
}

std::optional<Polynomial> Polynomial::sqrt() const {
    if (is_zero()) return Polynomial::constant(0, table_);
    const auto [lm, lc] = leading_term();
    auto ms = lm.sqrt();
    Rational cs;
    if (!ms || !rational_sqrt(lc, cs)) return std::nullopt;
    Polynomial s = Polynomial::term(cs, *ms, table_);
    // Standard leading-term descent: peel the next term of the root off
    // r = p - s^2 until it vanishes.
    while (true) {
        Polynomial r = *this - s * s;
        if (r.is_zero()) return s;
        const auto [rm, rc] = r.leading_term();
        auto qm = rm.divide(*ms);
        if (!qm) return std::nullopt;
        Polynomial t = Polynomial::term(rc / (Rational(2) * cs), *qm, table_);
        if (Monomial::compare(t.leading_term().first, s.leading_term().first) >= 0) return std::nullopt;
        s += t;
    }
}

std::map<unsigned, Polynomial> Polynomial::collect(Symbol s) const {
    std::map<unsigned, Polynomial> out;
    for (const auto& [m, c] : terms_) {
        const unsigned d = m.degree_of(s);
        auto rest = m.divide(Monomial(s, d));
        auto [it, inserted] = out.try_emplace(d, Polynomial::constant(0, table_));
        it->second.insert_term(*rest, c);
    }
    return out;
}

Polynomial Polynomial::with_table(SymbolTablePtr table) const {
    Polynomial out = *this;
    out.table_ = merge_tables(out.table_, std::move(table));
    return out;
}

Rational Polynomial::evaluate(const std::map<Symbol, Rational>& bindings) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [s, e] : m.powers()) {
            auto it = bindings.find(s);
            if (it == bindings.end())
                throw Error("unbound symbol '" + (table_ ? table_->name(s) : std::to_string(s.id)) +
                            "' in evaluation");
            Rational p(1);
            for (unsigned i = 0; i < e; ++i) p *= it->second;
            t *= p;
        }
        acc += t;
    }
    return acc;
}

std::string Polynomial::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool neg = sgn(c) < 0;
        Rational ac = abs(c);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        const bool unit = ac == 1;
        if (!unit || m.is_one()) os << to_string(ac);
        bool star = !unit && !m.is_one();
        for (const auto& [s, e] : m.powers()) {
            if (star) os << "*";
            os << (table_ ? table_->name(s) : "#" + std::to_string(s.id));
            if (e > 1) os << "^" << e;
            star = true;
        }
    }
    return os.str();
}

RationalFunction poly_substitute(const Polynomial& p, const std::map<Symbol, RationalFunction>& bindings) {
    for (const auto& [s, v] : bindings) {
        if (v.den().is_zero())
            throw DegenerateSubstitution("binding with zero denominator for symbol id " +
                                         std::to_string(s.id));
    }
    RationalFunction acc = RationalFunction::from(Polynomial::constant(0, p.table()));
    for (const auto& [m, c] : p.terms()) {
        RationalFunction t = RationalFunction::from(Polynomial::constant(c, p.table()));
        for (const auto& [s, e] : m.powers()) {
            auto it = bindings.find(s);
            RationalFunction base = it != bindings.end()
                                        ? it->second
                                        : RationalFunction::from_symbol(s, p.table());
            for (unsigned i = 0; i < e; ++i) t *= base;
        }
        acc += t;
    }
    return acc;
}

}  // namespace pssm
