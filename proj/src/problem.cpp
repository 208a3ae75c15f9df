#include <algorithm>
#include <map>
#include <sstream>

#include "pssm/problem.hpp"

namespace pssm {

namespace {

// One additive term of a reduced equation: core * k^k_power, with the k
// factors introduced by the substitution tracked separately so the common
// power can be divided out.
struct ReducedTerm {
    PdeExprPtr core;
    unsigned k_power = 0;
};

class Reducer {
public:
    Reducer(const ProblemSpec& p, const WaveReduction& r) : p_(p), r_(r) {
        speed_ = p.table->lookup(r.speed_param);
    }

    PdeExprPtr reduce_equation(const PdeExprPtr& eq) const {
        std::vector<ReducedTerm> terms = transform(eq);
        unsigned m = terms.empty() ? 0 : terms.front().k_power;
        for (const auto& t : terms) m = std::min(m, t.k_power);
        std::vector<PdeExprPtr> out;
        Symbol k = p_.table->lookup(r_.k_param);
        for (const auto& t : terms) {
            if (t.k_power == m) {
                out.push_back(t.core);
            } else {
                out.push_back(PdeExpr::product(
                    {PdeExpr::power(PdeExpr::param(k), t.k_power - m), t.core}));
            }
        }
        return PdeExpr::sum(std::move(out));
    }

private:
    std::vector<ReducedTerm> transform(const PdeExprPtr& e) const {
        switch (e->kind) {
            case PdeExpr::Kind::Const:
            case PdeExpr::Kind::Param:
            case PdeExpr::Kind::FuncRef:
                return {{e, 0}};
            case PdeExpr::Kind::Negate: {
                auto terms = transform(e->children[0]);
                for (auto& t : terms) t.core = PdeExpr::negate(t.core);
                return terms;
            }
            case PdeExpr::Kind::Sum: {
                std::vector<ReducedTerm> out;
                for (const auto& c : e->children) {
                    auto terms = transform(c);
                    out.insert(out.end(), terms.begin(), terms.end());
                }
                return out;
            }
            case PdeExpr::Kind::Product: {
                std::vector<ReducedTerm> acc{{nullptr, 0}};
                for (const auto& c : e->children) {
                    auto terms = transform(c);
                    std::vector<ReducedTerm> next;
                    for (const auto& a : acc)
                        for (const auto& t : terms) {
                            ReducedTerm nt;
                            nt.k_power = a.k_power + t.k_power;
                            nt.core = a.core == nullptr
                                          ? t.core
                                          : PdeExpr::product({a.core, t.core});
                            next.push_back(std::move(nt));
                        }
                    acc = std::move(next);
                }
                return acc;
            }
            case PdeExpr::Kind::Power: {
                std::vector<ReducedTerm> acc{{PdeExpr::constant(Rational(1)), 0}};
                for (unsigned i = 0; i < e->power_exp; ++i) {
                    auto terms = transform(e->children[0]);
                    std::vector<ReducedTerm> next;
                    for (const auto& a : acc)
                        for (const auto& t : terms)
                            next.push_back(
                                {PdeExpr::product({a.core, t.core}), a.k_power + t.k_power});
                    acc = std::move(next);
                }
                // Strip the seeding constant 1.
                for (auto& t : acc)
                    if (t.core->kind == PdeExpr::Kind::Product &&
                        t.core->children.front()->kind == PdeExpr::Kind::Const &&
                        t.core->children.front()->value == 1) {
                        std::vector<PdeExprPtr> rest(t.core->children.begin() + 1,
                                                     t.core->children.end());
                        t.core = PdeExpr::product(std::move(rest));
                    }
                return acc;
            }
            case PdeExpr::Kind::Deriv: {
                auto inner = transform(e->children[0]);
                const unsigned order = e->deriv_order;
                std::vector<ReducedTerm> out;
                for (const auto& t : inner) {
                    if (e->deriv_var == r_.space_var) {
                        out.push_back({PdeExpr::deriv(t.core, r_.new_var, order),
                                       t.k_power + order});
                    } else if (e->deriv_var == r_.time_var) {
                        // d/dt -> -lambda d/dz = -(c k) d/dz.
                        PdeExprPtr d = PdeExpr::deriv(t.core, r_.new_var, order);
                        PdeExprPtr core = PdeExpr::product(
                            {PdeExpr::power(PdeExpr::param(speed_), order), d});
                        if (order % 2 == 1) core = PdeExpr::negate(core);
                        out.push_back({core, t.k_power + order});
                    } else {
                        throw NotReducible("derivative in '" + e->deriv_var +
                                           "' is not covered by the reduction");
                    }
                }
                return out;
            }
        }
        throw Error("unreachable");
    }

    const ProblemSpec& p_;
    const WaveReduction& r_;
    Symbol speed_;
};

}  // namespace

ProblemSpec traveling_wave_reduce(const ProblemSpec& p, const WaveReduction& r) {
    if (p.vars.size() != 2 || !p.vars.index_of(r.space_var) || !p.vars.index_of(r.time_var))
        throw NotReducible("traveling-wave reduction requires exactly the variables (" +
                           r.space_var + ", " + r.time_var + ")");
    if (!p.table->contains(r.k_param) || !p.table->contains(r.lambda_param))
        throw NotReducible("reduction parameters are not declared");
    p.table->intern(r.speed_param);

    ProblemSpec out;
    out.name = p.name;
    out.vars.names = {r.new_var};
    out.table = p.table;
    Symbol lambda = p.table->lookup(r.lambda_param);
    for (Symbol s : p.params)
        if (!(s == lambda)) out.params.push_back(s);
    out.params.push_back(p.table->lookup(r.speed_param));
    out.unknowns = p.unknowns;
    out.seeds = p.seeds;
    out.match = p.match;
    out.reduction = std::nullopt;

    Reducer reducer(p, r);
    for (const auto& eq : p.equations) out.equations.push_back(reducer.reduce_equation(eq));
    return out;
}

ProblemSpec reduced_form(const ProblemSpec& p) {
    return p.reduction ? traveling_wave_reduce(p, *p.reduction) : p;
}

namespace {

std::string exponents_text(const ExpVec& e) {
    if (e.size() == 1) return std::to_string(e[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

std::string support_text(const SupportPolicy& sp, std::size_t nvars) {
    std::ostringstream os;
    switch (sp.kind()) {
        case SupportPolicy::Kind::TotalDegree:
            os << "total_degree " << *sp.degree_bound();
            break;
        case SupportPolicy::Kind::Explicit: {
            os << "explicit [";
            bool first = true;
            for (const auto& e : sp.enumerate(nvars)) {
                if (!first) os << ", ";
                first = false;
                os << exponents_text(e);
            }
            os << "]";
            break;
        }
        case SupportPolicy::Kind::Parity:
            os << "parity " << (sp.parities().front() == Parity::Even ? "even" : "odd");
            if (sp.degree_bound()) os << " total_degree " << *sp.degree_bound();
            break;
    }
    return os.str();
}

}  // namespace

std::string problem_to_text(const ProblemSpec& p) {
    std::ostringstream os;
    os << "problem " << p.name << "\n";
    os << "vars";
    for (const auto& v : p.vars.names) os << " " << v;
    os << "\n";
    if (!p.params.empty()) {
        os << "params";
        for (Symbol s : p.params) os << " " << p.table->name(s);
        os << "\n";
    }
    for (const auto& u : p.unknowns) {
        os << "unknown " << u.func << "(";
        for (std::size_t i = 0; i < p.vars.size(); ++i) os << (i ? ", " : "") << p.vars.names[i];
        os << ")\n";
    }
    for (const auto& eq : p.equations) os << "eq " << to_text(*eq, *p.table) << " = 0\n";
    if (p.reduction) {
        const auto& r = *p.reduction;
        os << "reduce " << r.new_var << " = " << r.k_param << "*" << r.space_var << " - "
           << r.lambda_param << "*" << r.time_var << " with " << r.speed_param << " = "
           << r.lambda_param << "/" << r.k_param << "\n";
    }
    const std::size_t arity = p.reduction ? 1 : p.vars.size();
    for (const auto& u : p.unknowns) {
        os << "ansatz " << u.func << ": " << support_text(u.support, arity);
        if (!u.names_prefix.empty()) os << " names " << u.names_prefix;
        os << "\n";
    }
    if (!p.seeds.empty()) {
        os << "seeds";
        for (const auto& sd : p.seeds) {
            os << " " << sd.func << "[";
            for (std::size_t i = 0; i < sd.exponents.size(); ++i)
                os << (i ? "," : "") << sd.exponents[i];
            os << "]";
        }
        os << "\n";
    }
    if (p.match.kind == MatchSpec::Kind::TotalDegree) {
        os << "match total_degree " << p.match.max_degree << "\n";
    } else if (p.match.kind == MatchSpec::Kind::Explicit) {
        os << "match explicit [";
        for (std::size_t i = 0; i < p.match.monomials.size(); ++i)
            os << (i ? ", " : "") << exponents_text(p.match.monomials[i]);
        os << "]\n";
    }
    return os.str();
}

namespace {

const std::map<std::string, std::string>& builtin_sources() {
    static const std::map<std::string, std::string> sources = {
        {"burgers-stationary", R"(problem burgers-stationary
vars x
params nu
unknown U(x)
eq U*dx(U) - nu*dx(dx(U)) = 0
ansatz U: total_degree 10 names a
seeds U[0] U[1]
match total_degree 8
)"},
        {"burgers-xt", R"(problem burgers-xt
vars x t
params nu
unknown U(x, t)
eq dt(U) + U*dx(U) - nu*dx(dx(U)) = 0
ansatz U: explicit [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0), (1, 2), (2, 1), (2, 2), (0, 3), (3, 0), (1, 3), (3, 1), (2, 3), (3, 2), (3, 3)] names a
seeds U[0,0] U[0,1] U[1,0] U[1,1]
match explicit [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (0, 3), (1, 2), (2, 1), (3, 0), (1, 3), (2, 2)]
)"},
        {"boundary-layer", R"(problem boundary-layer
vars x y
params nu
unknown U(x, y)
eq dy(U)*dx(dy(U)) - dx(U)*dy(dy(U)) - nu*dy(dy(dy(U))) = 0
ansatz U: explicit [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0), (1, 2), (2, 1), (1, 3), (2, 2), (1, 4), (2, 3)] names a
seeds U[0,0] U[0,1] U[1,0]
match explicit [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (1, 2), (2, 1), (1, 3), (2, 2)]
)"},
        {"kdv", R"(problem kdv
vars x t
params k lambda
unknown U(x, t)
eq dt(U) + dx(dx(dx(U))) + 6*U*dx(U) = 0
reduce z = k*x - lambda*t with c = lambda/k
ansatz U: total_degree 8 names a
seeds U[0] U[1] U[2]
match total_degree 5
)"},
        {"coupled-kdv", R"(problem coupled-kdv
vars x t
params k lambda
unknown U(x, t)
unknown V(x, t)
unknown W(x, t)
eq dt(U) - dx(dx(dx(U)))/2 + 3*U*dx(U) - 3*dx(V*W) = 0
eq dt(V) + dx(dx(dx(V))) - 3*U*dx(V) = 0
eq dt(W) + dx(dx(dx(W))) - 3*U*dx(W) = 0
reduce z = k*x - lambda*t with c = lambda/k
ansatz U: total_degree 7 names a
ansatz V: total_degree 7 names b
ansatz W: total_degree 7 names c
seeds U[0] U[1] U[2] V[0] V[1] V[2] W[0] W[1] W[2]
match total_degree 4
)"},
    };
    return sources;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, src] : builtin_sources()) out.push_back(name);
        return out;
    }();
    return names;
}

const std::string& builtin_source(const std::string& name) {
    const auto& sources = builtin_sources();
    auto it = sources.find(name);
    if (it == sources.end()) throw Error("unknown built-in problem '" + name + "'");
    return it->second;
}

ProblemSpec builtin(const std::string& name) { return parse_problem(builtin_source(name)); }

}  // namespace pssm
