#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pssm/rational.hpp"
#include "pssm/symbol.hpp"

namespace pssm {

// Sparse product of symbol powers, pairs sorted by symbol id.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Symbol s, unsigned exp = 1) {
        if (exp > 0) powers_.emplace_back(s, exp);
    }

    static Monomial one() { return {}; }

    bool is_one() const { return powers_.empty(); }
    unsigned total_degree() const;
    unsigned degree_of(Symbol s) const;
    const std::vector<std::pair<Symbol, unsigned>>& powers() const { return powers_; }

    Monomial times(const Monomial& rhs) const;
    // Componentwise min of exponents (the gcd of the two monomials).
    Monomial gcd(const Monomial& rhs) const;
    // Fails (nullopt) when some exponent of `divisor` exceeds ours.
    std::optional<Monomial> divide(const Monomial& divisor) const;
    std::optional<Monomial> sqrt() const;

    // Graded-lex: total degree first, then lexicographically by exponent
    // vector over symbols in creation order, smaller exponent first.
    static int compare(const Monomial& a, const Monomial& b);
    friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }

private:
    std::vector<std::pair<Symbol, unsigned>> powers_;
};

class RationalFunction;

// Sparse multivariate polynomial over Rational, terms kept in the canonical
// graded-lex order. The symbol table is shared context for printing; values
// from different universes never mix.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial constant(Rational value, SymbolTablePtr table = nullptr);
    static Polynomial symbol(Symbol s, SymbolTablePtr table);
    static Polynomial term(Rational coeff, Monomial m, SymbolTablePtr table);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    Rational constant_value() const;  // requires is_constant()

    std::size_t term_count() const { return terms_.size(); }
    unsigned total_degree() const;
    unsigned degree_in(Symbol s) const;
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    const SymbolTablePtr& table() const { return table_; }

    Rational coefficient(const Monomial& m) const;
    std::set<Symbol> symbols() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs) { return *this = *this * rhs; }
    Polynomial scaled(const Rational& factor) const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) { return lhs.terms_ == rhs.terms_; }

    // gcd of |integer coefficients| once rational denominators are cleared;
    // returned as the rational c with (*this)/c integer, content 1.
    Rational content() const;
    Polynomial divided_by_content(Rational& content_out) const;
    // The monomial dividing every term.
    Monomial monomial_content() const;
    std::optional<Polynomial> divide_by_monomial(const Monomial& m) const;
    // Exact polynomial division; nullopt when not divisible.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
    std::optional<Polynomial> sqrt() const;

    // Greatest term in the graded-lex order.
    std::pair<Monomial, Rational> leading_term() const;

    // Collect as a univariate polynomial in `s`: degree -> coefficient poly.
    std::map<unsigned, Polynomial> collect(Symbol s) const;

    Polynomial with_table(SymbolTablePtr table) const;

    // Exact evaluation; every symbol must be bound.
    Rational evaluate(const std::map<Symbol, Rational>& bindings) const;

    std::string to_text() const;

private:
    friend SymbolTablePtr merge_tables(const SymbolTablePtr&, const SymbolTablePtr&);
    void insert_term(const Monomial& m, const Rational& c);

    std::map<Monomial, Rational> terms_;
    SymbolTablePtr table_;
};

SymbolTablePtr merge_tables(const SymbolTablePtr& a, const SymbolTablePtr& b);

// Substitution of symbols by rational functions; unbound symbols pass through.
RationalFunction poly_substitute(const Polynomial& p, const std::map<Symbol, RationalFunction>& bindings);

}  // namespace pssm
