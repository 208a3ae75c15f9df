#include "pssm/verify.hpp"

#include <algorithm>

namespace pssm {

bool ResidualReport::all_zero() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ResidualEntry& e) { return e.zero; });
}

ResidualReport residual(const Expansion& ex, const std::map<Symbol, RationalFunction>& values) {
    // Substitute the candidate values into every ansatz coefficient, then
    // re-evaluate each equation through the series engine.
    std::map<std::string, TruncSeries> assigned;
    for (const auto& [fn, s] : ex.series) {
        TruncSeries t(s.vars(), s.support());
        for (const auto& [e, c] : s.coeffs()) t.set_coefficient(e, c.substitute(values));
        assigned.emplace(fn, std::move(t));
    }
    ResidualReport report;
    for (const auto& mono : ex.match_set)
        report.max_checked_degree = std::max(report.max_checked_degree, total_degree(mono));
    const ProblemSpec& p = ex.problem;
    for (std::size_t ei = 0; ei < p.equations.size(); ++ei) {
        TruncSeries value =
            eval_over_series(*p.equations[ei], p.vars, assigned, ex.product_bound, p.table);
        for (const auto& mono : ex.match_set) {
            RationalFunction c = coefficient(value, mono);
            ResidualEntry entry;
            entry.equation_index = ei;
            entry.monomial = mono;
            entry.zero = c.is_zero();
            if (!entry.zero) entry.residual_text = c.to_text();
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

ResidualReport residual(const ProblemSpec& p, const SolveResult& r) {
    Expansion ex = expand_pde(p);
    return residual(ex, r.assignment_map());
}

NumericSeries numeric_series(const Expansion& ex, const std::string& func, const SolveResult& r,
                             const std::map<Symbol, Rational>& bindings) {
    auto it = ex.series.find(func);
    if (it == ex.series.end()) throw UnknownFunction("unknown function '" + func + "'");
    const auto values = r.substitution_map();
    NumericSeries out;
    for (const auto& [e, c] : it->second.coeffs()) {
        RationalFunction v = c.substitute(values);
        Rational num;
        try {
            num = v.evaluate(bindings);
        } catch (const DivisionByZero& err) {
            throw AssumptionViolated(std::string("divisor vanished while evaluating: ") + err.what());
        }
        if (sgn(num) != 0) out.terms.emplace_back(e, std::move(num));
    }
    return out;
}

Rational eval_exact(const NumericSeries& s, const std::vector<Rational>& point) {
    Rational acc(0);
    for (const auto& [e, c] : s.terms) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned j = 0; j < e[i]; ++j) t *= point[i];
        acc += t;
    }
    return acc;
}

double eval_float(const NumericSeries& s, const std::vector<double>& point) {
    double acc = 0.0;
    for (const auto& [e, c] : s.terms) {
        double t = c.get_d();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned j = 0; j < e[i]; ++j) t *= point[i];
        acc += t;
    }
    return acc;
}

void check_assumptions(const SolveResult& r, const std::map<Symbol, Rational>& bindings) {
    for (const auto& a : r.assumptions) {
        // An assumption with unbound symbols cannot vanish numerically; only
        // fully bound divisors are checked.
        bool bound = true;
        for (Symbol s : a.symbols())
            if (!bindings.count(s)) {
                bound = false;
                break;
            }
        if (!bound) continue;
        if (sgn(a.num().evaluate(bindings)) == 0)
            throw AssumptionViolated("assumption " + a.to_text() + " != 0 is violated by the bindings");
    }
}

}  // namespace pssm
