#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pssm/pde_ast.hpp"
#include "pssm/series.hpp"

namespace pssm {

struct AnsatzDecl {
    std::string func;
    SupportPolicy support;
    // Coefficient naming: empty = default F_e1_..._ed; otherwise
    // prefix-style table names (a_0, a_14, ...).
    std::string names_prefix;
};

// z = k*x - lambda*t with c = lambda/k; lambda is eliminated immediately.
struct WaveReduction {
    std::string new_var;
    std::string space_var;
    std::string time_var;
    std::string k_param;
    std::string lambda_param;
    std::string speed_param;
};

struct MatchSpec {
    enum class Kind { Default, TotalDegree, Explicit };
    Kind kind = Kind::Default;
    unsigned max_degree = 0;
    std::vector<ExpVec> monomials;  // Explicit, graded-lex order
};

struct SeedDecl {
    std::string func;
    ExpVec exponents;
};

struct ProblemSpec {
    std::string name;
    VarSet vars;
    std::vector<Symbol> params;
    std::vector<AnsatzDecl> unknowns;
    std::vector<PdeExprPtr> equations;  // each read as expr = 0
    std::vector<SeedDecl> seeds;
    MatchSpec match;
    std::optional<WaveReduction> reduction;
    SymbolTablePtr table;

    const AnsatzDecl& unknown(const std::string& fn) const;
    bool is_unknown(const std::string& fn) const;
};

// Parses the .pde problem DSL. Statements:
//   problem <name>
//   vars <v> ...
//   params <p> ...
//   unknown <F>(<v>, ...)
//   eq <expr> = <expr>
//   ansatz <F>: total_degree N | explicit [(i,j), ...] | parity even|odd [total_degree N]
//              [names <prefix>]
//   seeds <F>[i,j] ...
//   match total_degree N | explicit [(i,j), ...]
//   reduce z = k*x - lambda*t with c = lambda/k
ProblemSpec parse_problem(const std::string& text);

// Renders a ProblemSpec back to DSL text (round-trips through parse_problem).
std::string problem_to_text(const ProblemSpec& p);

// Substitutes z = k*x - lambda*t, eliminates lambda via c = lambda/k, and
// divides each equation by the common power of k.
ProblemSpec traveling_wave_reduce(const ProblemSpec& p, const WaveReduction& r);

// Applies the problem's reduction directive if present.
ProblemSpec reduced_form(const ProblemSpec& p);

// The five built-in problems.
const std::vector<std::string>& builtin_names();
ProblemSpec builtin(const std::string& name);
const std::string& builtin_source(const std::string& name);

}  // namespace pssm
