#include "pssm/solve.hpp"

#include <algorithm>

namespace pssm {

const RationalFunction* SolveResult::value_of(Symbol s) const {
    for (const auto& [sym, v] : assignments)
        if (sym == s) return &v;
    return nullptr;
}

std::map<Symbol, RationalFunction> SolveResult::assignment_map() const {
    std::map<Symbol, RationalFunction> out;
    for (const auto& [s, v] : assignments) out.emplace(s, v);
    return out;
}

std::map<Symbol, RationalFunction> SolveResult::substitution_map() const {
    std::map<Symbol, RationalFunction> out = assignment_map();
    for (const auto& [s, v] : seed_bindings) out.insert_or_assign(s, v);
    return out;
}

bool VerifyReport::all_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.zero; });
}

namespace {

bool involves_any(const Polynomial& p, const std::set<Symbol>& set) {
    for (Symbol s : p.symbols())
        if (set.count(s)) return true;
    return false;
}

std::string monomial_tag(const ExpVec& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

class Solver {
public:
    Solver(const AlgSystem& sys, const SolvePolicy& policy) : sys_(sys), policy_(policy) {
        unknown_set_.insert(sys.unknowns.begin(), sys.unknowns.end());
    }

    SolveResult run() {
        State s;
        s.satisfied.assign(sys_.equations.size(), false);
        std::vector<State> leaves;
        explore(std::move(s), leaves);
        std::vector<SolveResult> results;
        for (auto& leaf : leaves) results.push_back(finalize(leaf));
        SolveResult out = std::move(results.front());
        out.branches.assign(std::make_move_iterator(results.begin() + 1),
                            std::make_move_iterator(results.end()));
        return out;
    }

private:
    struct State {
        std::map<Symbol, RationalFunction> assignments;  // eagerly substituted
        std::map<Symbol, std::size_t> source;            // assigning equation
        std::vector<RationalFunction> assumptions;
        std::vector<bool> satisfied;
    };

    void explore(State s, std::vector<State>& leaves) {
        while (true) {
            if (linear_pass(s)) continue;
            if (policy_.allow_quadratic && quadratic_step(s, leaves)) return;
            break;
        }
        leaves.push_back(std::move(s));
        if (leaves.size() > policy_.max_branches)
            throw BranchLimit("quadratic branching exceeded max_branches = " +
                              std::to_string(policy_.max_branches));
    }

    bool linear_pass(State& s) {
        bool progress = false;
        for (std::size_t i = 0; i < sys_.equations.size(); ++i) {
            if (s.satisfied[i]) continue;
            Polynomial num = substituted_numerator(s, i);
            if (num.is_zero()) {
                s.satisfied[i] = true;
                progress = true;
                continue;
            }
            if (!involves_any(num, unassigned(s))) {
                if (num.is_constant())
                    throw Inconsistent("equation " + std::to_string(sys_.equations[i].equation_index) +
                                       " at monomial " + monomial_tag(sys_.equations[i].monomial) +
                                       " reduces to the nonzero constant " +
                                       to_string(num.constant_value()));
                continue;  // nonzero constraint on seeds/params; left unresolved
            }
            if (eliminate_linear(s, i, num)) progress = true;
        }
        return progress;
    }

    std::set<Symbol> unassigned(const State& s) const {
        std::set<Symbol> out;
        for (Symbol u : sys_.unknowns)
            if (!s.assignments.count(u)) out.insert(u);
        return out;
    }

    Polynomial substituted_numerator(const State& s, std::size_t i) const {
        if (s.assignments.empty()) return sys_.equations[i].poly;
        RationalFunction rf = poly_substitute(sys_.equations[i].poly, s.assignments);
        return rf.num();
    }

    // Ranks eliminable unknowns: divisors free of seed symbols first, then
    // the highest creation index (the newest coefficient, which is the one a
    // dispersion/diffusion term introduces).
    bool eliminate_linear(State& s, std::size_t i, const Polynomial& num) {
        const std::set<Symbol> open = unassigned(s);
        std::set<Symbol> seed_syms(sys_.seeds.begin(), sys_.seeds.end());
        struct Candidate {
            Symbol u;
            int rank;
            Polynomial kappa;
            Polynomial rest;
        };
        std::optional<Candidate> best;
        for (Symbol u : open) {
            if (num.degree_in(u) != 1) continue;
            auto parts = num.collect(u);
            const Polynomial& kappa = parts.at(1);
            if (involves_any(kappa, open)) continue;
            if (!policy_.generic_seeds && !kappa.is_constant()) continue;
            int rank = involves_any(kappa, seed_syms) ? 1 : 0;
            Polynomial rest = parts.count(0) ? parts.at(0) : Polynomial();
            if (!best || rank < best->rank || (rank == best->rank && best->u < u))
                best = Candidate{u, rank, kappa, std::move(rest)};
        }
        if (!best) return false;
        if (!best->kappa.is_constant()) record_assumption(s, RationalFunction::from(best->kappa));
        assign(s, i, best->u, RationalFunction(-best->rest, best->kappa));
        return true;
    }

    // First equation (in order) that is quadratic in exactly one unassigned
    // unknown with a perfect-square discriminant forks one state per root.
    bool quadratic_step(State& s, std::vector<State>& leaves) {
        const std::set<Symbol> open = unassigned(s);
        for (std::size_t i = 0; i < sys_.equations.size(); ++i) {
            if (s.satisfied[i]) continue;
            Polynomial num = substituted_numerator(s, i);
            std::set<Symbol> present;
            for (Symbol sym : num.symbols())
                if (open.count(sym)) present.insert(sym);
            if (present.size() != 1) continue;
            Symbol u = *present.begin();
            if (num.degree_in(u) != 2) continue;
            auto parts = num.collect(u);
            Polynomial a = parts.at(2);
            Polynomial b = parts.count(1) ? parts.at(1) : Polynomial();
            Polynomial c = parts.count(0) ? parts.at(0) : Polynomial();
            Polynomial disc = b * b - a * c.scaled(Rational(4));
            auto root = disc.sqrt();
            if (!root) continue;
            Polynomial two_a = a.scaled(Rational(2));
            if (!a.is_constant()) record_assumption(s, RationalFunction::from(a));
            std::vector<RationalFunction> values;
            values.emplace_back(RationalFunction(-b + *root, two_a));
            if (policy_.root_selection == SolvePolicy::RootSelection::Both && !root->is_zero())
                values.emplace_back(RationalFunction(-b - *root, two_a));
            for (std::size_t vi = 0; vi < values.size(); ++vi) {
                State branch = s;
                assign(branch, i, u, values[vi]);
                explore(std::move(branch), leaves);
            }
            return true;
        }
        return false;
    }

    void assign(State& s, std::size_t i, Symbol u, RationalFunction value) {
        std::map<Symbol, RationalFunction> one{{u, value}};
        for (auto& [sym, v] : s.assignments) v = v.substitute(one);
        s.assignments.emplace(u, std::move(value));
        s.source.emplace(u, i);
        s.satisfied[i] = true;
    }

    // Divisors are recorded content-free, and a pure monomial reduces to the
    // product of its symbols: dividing by 6*k^2 and by 120*k^4 both assume
    // k != 0.
    void record_assumption(State& s, const RationalFunction& divisor) {
        Rational content;
        Polynomial norm = divisor.num().divided_by_content(content);
        if (sgn(norm.leading_term().second) < 0) norm = -norm;
        if (norm.term_count() == 1) {
            const auto lead = norm.leading_term();
            Polynomial radical = Polynomial::constant(1, norm.table());
            for (const auto& [sym, e] : lead.first.powers())
                radical *= Polynomial::symbol(sym, norm.table());
            norm = std::move(radical);
        }
        if (norm.is_constant()) return;
        RationalFunction entry = RationalFunction::from(norm);
        for (const auto& a : s.assumptions)
            if (ratfunc_equal(a, entry)) return;
        s.assumptions.push_back(std::move(entry));
    }

    SolveResult finalize(State& s) {
        // Retract assignments whose value still references a never-assigned
        // unknown; their equations return to the unresolved pool.
        while (true) {
            std::vector<Symbol> bad;
            for (const auto& [sym, v] : s.assignments)
                if (involves_any(v.num(), unassigned(s)) || involves_any(v.den(), unassigned(s)))
                    bad.push_back(sym);
            if (bad.empty()) break;
            for (Symbol sym : bad) {
                s.satisfied[s.source.at(sym)] = false;
                s.assignments.erase(sym);
                s.source.erase(sym);
            }
        }
        SolveResult out;
        out.seeds = sys_.seeds;
        out.params = sys_.params;
        out.table = sys_.table;
        out.assumptions = std::move(s.assumptions);
        for (const auto& [sym, v] : s.assignments) out.assignments.emplace_back(sym, v);
        for (std::size_t i = 0; i < sys_.equations.size(); ++i) {
            if (s.satisfied[i]) continue;
            Polynomial num = substituted_numerator(s, i);
            if (num.is_zero()) continue;
            Rational content;
            Polynomial norm = num.divided_by_content(content);
            if (sgn(norm.leading_term().second) < 0) norm = -norm;
            out.unresolved.push_back(
                AlgEquation{sys_.equations[i].equation_index, sys_.equations[i].monomial, norm});
        }
        return out;
    }

    const AlgSystem& sys_;
    const SolvePolicy& policy_;
    std::set<Symbol> unknown_set_;
};

}  // namespace

SolveResult solve_system(const AlgSystem& sys, const SolvePolicy& policy) {
    return Solver(sys, policy).run();
}

SolveResult specialize(const SolveResult& r, const std::map<Symbol, RationalFunction>& bindings) {
    if (bindings.empty()) return r;
    std::set<Symbol> seed_set(r.seeds.begin(), r.seeds.end());
    std::set<Symbol> param_set(r.params.begin(), r.params.end());
    for (const auto& [s, v] : bindings)
        if (!seed_set.count(s) && !param_set.count(s))
            throw Error("specialize binds non-seed symbol '" +
                        (r.table ? r.table->name(s) : std::to_string(s.id)) + "'");
    for (const auto& a : r.assumptions) {
        RationalFunction sub = a.substitute(bindings);
        if (sub.is_zero())
            throw AssumptionViolated("assumption " + a.to_text() + " != 0 is violated");
    }
    SolveResult out;
    out.seeds = r.seeds;
    out.params = r.params;
    out.table = r.table;
    out.seed_bindings = r.seed_bindings;
    for (const auto& [s, v] : bindings) out.seed_bindings.insert_or_assign(s, v);
    for (const auto& a : r.assumptions) out.assumptions.push_back(a.substitute(bindings));
    for (const auto& [s, v] : r.assignments) out.assignments.emplace_back(s, v.substitute(bindings));
    for (const auto& eq : r.unresolved) {
        RationalFunction sub = poly_substitute(eq.poly, bindings);
        if (sub.is_zero()) continue;
        out.unresolved.push_back(AlgEquation{eq.equation_index, eq.monomial, sub.num()});
    }
    for (const auto& b : r.branches) out.branches.push_back(specialize(b, bindings));
    return out;
}

VerifyReport verify_assignment(const AlgSystem& sys,
                               const std::map<Symbol, RationalFunction>& candidate) {
    for (Symbol u : sys.unknowns)
        if (!candidate.count(u))
            throw SchemaError("candidate is missing unknown '" + sys.table->name(u) + "'");
    VerifyReport report;
    for (const auto& eq : sys.equations) {
        RationalFunction residual = poly_substitute(eq.poly, candidate);
        VerifyEntry e;
        e.equation_index = eq.equation_index;
        e.monomial = eq.monomial;
        e.zero = residual.is_zero();
        e.residual = std::move(residual);
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace pssm
