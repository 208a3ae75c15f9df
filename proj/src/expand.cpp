#include "pssm/expand.hpp"

#include <algorithm>

namespace pssm {

namespace {

unsigned max_derivative_order(const PdeExpr& e) {
    unsigned inner = 0;
    for (const auto& c : e.children) inner = std::max(inner, max_derivative_order(*c));
    if (e.kind == PdeExpr::Kind::Deriv) inner += e.deriv_order;
    return inner;
}

std::vector<ExpVec> all_monomials_up_to(std::size_t nvars, unsigned max_deg) {
    return SupportPolicy::total_degree(max_deg).enumerate(nvars);
}

}  // namespace

bool AlgSystem::is_known(Symbol s) const {
    return std::find(seeds.begin(), seeds.end(), s) != seeds.end() ||
           std::find(params.begin(), params.end(), s) != params.end();
}

bool AlgSystem::is_unknown(Symbol s) const {
    return std::find(unknowns.begin(), unknowns.end(), s) != unknowns.end();
}

TruncSeries eval_over_series(const PdeExpr& e, const VarSet& vars,
                             const std::map<std::string, TruncSeries>& functions,
                             unsigned product_bound, const SymbolTablePtr& table) {
    switch (e.kind) {
        case PdeExpr::Kind::Const:
            return series_const(vars, RationalFunction::from(Polynomial::constant(e.value, table)));
        case PdeExpr::Kind::Param:
            return series_const(vars, RationalFunction::from_symbol(e.param_sym, table));
        case PdeExpr::Kind::FuncRef: {
            auto it = functions.find(e.func);
            if (it == functions.end()) throw UnknownFunction("unknown function '" + e.func + "'");
            return it->second;
        }
        case PdeExpr::Kind::Deriv:
            return series_diff(
                eval_over_series(*e.children[0], vars, functions, product_bound, table),
                e.deriv_var, e.deriv_order);
        case PdeExpr::Kind::Negate:
            return series_scale(
                eval_over_series(*e.children[0], vars, functions, product_bound, table),
                RationalFunction::from(Rational(-1)));
        case PdeExpr::Kind::Sum: {
            TruncSeries acc = eval_over_series(*e.children[0], vars, functions, product_bound, table);
            for (std::size_t i = 1; i < e.children.size(); ++i)
                acc = series_add(acc, eval_over_series(*e.children[i], vars, functions,
                                                       product_bound, table));
            return acc;
        }
        case PdeExpr::Kind::Product: {
            TruncSeries acc = eval_over_series(*e.children[0], vars, functions, product_bound, table);
            for (std::size_t i = 1; i < e.children.size(); ++i)
                acc = series_mul(acc, eval_over_series(*e.children[i], vars, functions,
                                                       product_bound, table),
                                 product_bound);
            return acc;
        }
        case PdeExpr::Kind::Power: {
            TruncSeries base = eval_over_series(*e.children[0], vars, functions, product_bound, table);
            TruncSeries acc = base;
            for (unsigned i = 1; i < e.power_exp; ++i) acc = series_mul(acc, base, product_bound);
            return acc;
        }
    }
    throw Error("unreachable");
}

Expansion expand_pde(const ProblemSpec& input) {
    Expansion out;
    out.problem = reduced_form(input);
    const ProblemSpec& p = out.problem;
    const std::size_t nvars = p.vars.size();

    // Fresh coefficient symbols, one per admitted exponent vector, in
    // declaration order then graded-lex order. A frozen table marks a
    // re-expansion of the same problem; the existing symbols are reused.
    const bool reexpansion = p.table->frozen();
    for (const auto& u : p.unknowns) {
        SeedNamer namer = u.names_prefix.empty() ? default_namer() : prefix_namer(u.names_prefix);
        out.series.emplace(u.func, ansatz(u.func, p.vars, u.support, namer, p.table, reexpansion));
    }
    p.table->freeze();

    unsigned max_ansatz_degree = 0;
    for (const auto& u : p.unknowns)
        max_ansatz_degree = std::max(max_ansatz_degree, u.support.max_total_degree(nvars));
    out.product_bound = max_ansatz_degree;

    unsigned max_deriv = 0;
    for (const auto& eq : p.equations) max_deriv = std::max(max_deriv, max_derivative_order(*eq));
    const unsigned reliable =
        max_ansatz_degree >= max_deriv ? max_ansatz_degree - max_deriv : 0;

    // Match set: the provably reliable default, or the problem's override.
    switch (p.match.kind) {
        case MatchSpec::Kind::Default:
            out.match_set = all_monomials_up_to(nvars, reliable);
            break;
        case MatchSpec::Kind::TotalDegree:
            if (p.match.max_degree > reliable)
                throw UnreliableMatch("match bound " + std::to_string(p.match.max_degree) +
                                      " exceeds the reliable degree " + std::to_string(reliable));
            out.match_set = all_monomials_up_to(nvars, p.match.max_degree);
            break;
        case MatchSpec::Kind::Explicit: {
            out.match_set = p.match.monomials;
            std::sort(out.match_set.begin(), out.match_set.end(), GradedLexLess{});
            for (const auto& e : out.match_set)
                if (e.size() != nvars) throw Error("match monomial arity mismatch");
            break;
        }
    }

    AlgSystem& sys = out.system;
    sys.table = p.table;
    for (Symbol s : p.params) sys.params.push_back(s);
    std::set<Symbol> seed_set;
    for (const auto& sd : p.seeds) {
        RationalFunction c = coefficient(out.series.at(sd.func), sd.exponents);
        if (c.is_zero()) throw Error("seed of '" + sd.func + "' is outside the ansatz support");
        Symbol s = *c.num().symbols().begin();
        sys.seeds.push_back(s);
        seed_set.insert(s);
    }

    // Evaluate each equation once and read off the matched coefficients.
    std::set<Symbol> unknown_set;
    for (std::size_t ei = 0; ei < p.equations.size(); ++ei) {
        TruncSeries value =
            eval_over_series(*p.equations[ei], p.vars, out.series, out.product_bound, p.table);
        for (const auto& mono : out.match_set) {
            RationalFunction c = coefficient(value, mono);
            if (c.is_zero()) {
                out.trivial.push_back(TrivialMatch{ei, mono});
                continue;
            }
            if (!c.den().is_constant())
                throw Error("matched coefficient has a non-constant denominator");
            // Clear rational constants; store with integer coefficients,
            // content 1, positive leading coefficient.
            Rational content;
            Polynomial poly = (c.num().scaled(Rational(1) / c.den().constant_value()))
                                  .divided_by_content(content);
            if (sgn(poly.leading_term().second) < 0) poly = -poly;
            AlgEquation eq;
            eq.equation_index = ei;
            eq.monomial = mono;
            eq.poly = std::move(poly);
            sys.equations.push_back(std::move(eq));
        }
    }

    // Classify every symbol occurring in the system.
    std::set<Symbol> occurring;
    for (const auto& eq : sys.equations) {
        auto syms = eq.poly.symbols();
        occurring.insert(syms.begin(), syms.end());
    }
    for (Symbol s : occurring) {
        if (seed_set.count(s)) continue;
        if (std::find(sys.params.begin(), sys.params.end(), s) != sys.params.end()) continue;
        unknown_set.insert(s);
    }
    sys.unknowns.assign(unknown_set.begin(), unknown_set.end());
    return out;
}

ClassifyReport classify(const AlgSystem& sys) {
    ClassifyReport r;
    r.equations = sys.equations.size();
    r.unknowns = sys.unknowns.size();
    r.seeds = sys.seeds.size();
    r.params = sys.params.size();
    r.underdetermined = r.equations < r.unknowns;
    r.overdetermined = r.equations > r.unknowns;
    r.trivially_determined = r.equations == 0 && r.unknowns == 0;
    return r;
}

}  // namespace pssm
