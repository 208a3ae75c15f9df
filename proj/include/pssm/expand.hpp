#pragma once

#include <map>
#include <string>
#include <vector>

#include "pssm/problem.hpp"

namespace pssm {

// One matched polynomial equation, poly = 0, tagged with its source.
struct AlgEquation {
    std::size_t equation_index = 0;
    ExpVec monomial;
    Polynomial poly;  // integer coefficients, no stored zero
};

struct AlgSystem {
    std::vector<AlgEquation> equations;  // ordered by (equation index, graded-lex monomial)
    std::vector<Symbol> unknowns;        // creation order; symbols occurring in equations
    std::vector<Symbol> seeds;
    std::vector<Symbol> params;
    SymbolTablePtr table;

    bool is_known(Symbol s) const;
    bool is_unknown(Symbol s) const;
};

// Matched monomials that evaluated to identically zero (kept for the parity
// property check, not emitted as equations).
struct TrivialMatch {
    std::size_t equation_index = 0;
    ExpVec monomial;
};

struct Expansion {
    ProblemSpec problem;  // post-reduction
    std::map<std::string, TruncSeries> series;  // generic ansatz per unknown
    std::vector<ExpVec> match_set;              // graded-lex order
    AlgSystem system;
    std::vector<TrivialMatch> trivial;
    unsigned product_bound = 0;  // out_bound used for series products
};

// Substitutes each unknown's ansatz into each equation, evaluates over series
// arithmetic and collects one polynomial equation per matched monomial.
Expansion expand_pde(const ProblemSpec& p);

struct ClassifyReport {
    std::size_t equations = 0;
    std::size_t unknowns = 0;
    std::size_t seeds = 0;
    std::size_t params = 0;
    bool underdetermined = false;
    bool overdetermined = false;
    bool trivially_determined = false;  // 0 equations, 0 unknowns
};

ClassifyReport classify(const AlgSystem& sys);

// Evaluates a PDE expression over series arithmetic with the given bindings
// for function references. Used by expansion and by residual verification.
TruncSeries eval_over_series(const PdeExpr& e, const VarSet& vars,
                             const std::map<std::string, TruncSeries>& functions,
                             unsigned product_bound, const SymbolTablePtr& table);

}  // namespace pssm
