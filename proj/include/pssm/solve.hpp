#pragma once

#include "pssm/expand.hpp"

namespace pssm {

struct SolvePolicy {
    enum class RootSelection { Both, Principal };
    bool allow_quadratic = true;
    unsigned max_branches = 4;
    RootSelection root_selection = RootSelection::Both;
    // Seeds are assumed nonzero / algebraically independent: any divisor that
    // is nonzero as a polynomial in seeds and params is accepted and logged.
    bool generic_seeds = true;
};

struct SolveResult {
    // Ordered by symbol creation order; values reference seeds and params only.
    std::vector<std::pair<Symbol, RationalFunction>> assignments;
    std::vector<RationalFunction> assumptions;  // divisors declared nonzero
    std::vector<AlgEquation> unresolved;        // post-substitution, nonzero
    std::vector<SolveResult> branches;          // alternatives from quadratic forks
    // Seed values applied by specialize, for rendering and evaluation.
    std::map<Symbol, RationalFunction> seed_bindings;

    std::vector<Symbol> seeds;
    std::vector<Symbol> params;
    SymbolTablePtr table;

    bool fully_resolved() const { return unresolved.empty(); }
    const RationalFunction* value_of(Symbol s) const;
    std::map<Symbol, RationalFunction> assignment_map() const;
    // Assignments plus applied seed bindings.
    std::map<Symbol, RationalFunction> substitution_map() const;
};

// Iterative elimination: an equation that is linear in exactly one eliminable
// unknown (its coefficient free of unassigned unknowns) assigns that unknown;
// with allow_quadratic, single-unknown quadratics with perfect-square
// discriminants fork per root. Ends with full back-substitution.
SolveResult solve_system(const AlgSystem& sys, const SolvePolicy& policy = {});

// Re-evaluates a result under seed bindings; assumptions are re-checked and a
// vanishing one raises AssumptionViolated.
SolveResult specialize(const SolveResult& r, const std::map<Symbol, RationalFunction>& bindings);

struct VerifyEntry {
    std::size_t equation_index = 0;
    ExpVec monomial;
    bool zero = false;
    RationalFunction residual;
};

struct VerifyReport {
    std::vector<VerifyEntry> entries;
    bool all_zero() const;
};

// Substitutes a full candidate assignment into every equation of the system.
VerifyReport verify_assignment(const AlgSystem& sys,
                               const std::map<Symbol, RationalFunction>& candidate);

}  // namespace pssm
