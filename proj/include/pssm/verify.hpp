#pragma once

#include "pssm/solve.hpp"

namespace pssm {

struct ResidualEntry {
    std::size_t equation_index = 0;
    ExpVec monomial;
    bool zero = false;
    std::string residual_text;  // empty when zero
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;
    unsigned max_checked_degree = 0;
    bool all_zero() const;
};

// Rebuilds each PDE's series with assigned coefficient values and reports the
// coefficient of every matched monomial. Independent of the AlgSystem route:
// this re-runs the series arithmetic from the ansatz.
ResidualReport residual(const Expansion& ex, const std::map<Symbol, RationalFunction>& values);
ResidualReport residual(const ProblemSpec& p, const SolveResult& r);

enum class EvalPrecision { ExactRational, Float64 };

struct EvalGrid {
    std::map<Symbol, Rational> bindings;           // parameter + seed values
    std::vector<std::vector<Rational>> points;     // one list per variable
    EvalPrecision precision = EvalPrecision::Float64;
};

// The solved series of one unknown: ansatz coefficients with assignments and
// seed bindings substituted down to rational numbers.
struct NumericSeries {
    std::vector<std::pair<ExpVec, Rational>> terms;  // graded order
};

NumericSeries numeric_series(const Expansion& ex, const std::string& func, const SolveResult& r,
                             const std::map<Symbol, Rational>& bindings);

// Graded Horner-style evaluation. Exact mode is bit-reproducible; float mode
// is IEEE double in the same graded summation order.
Rational eval_exact(const NumericSeries& s, const std::vector<Rational>& point);
double eval_float(const NumericSeries& s, const std::vector<double>& point);

// Checks every assumption of the result against the bindings.
void check_assumptions(const SolveResult& r, const std::map<Symbol, Rational>& bindings);

}  // namespace pssm
