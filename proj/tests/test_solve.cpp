#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pssm/solve.hpp"
#include "pssm/text.hpp"

using namespace pssm;

namespace {

RationalFunction value(const SolveResult& r, const std::string& name) {
    Symbol s = r.table->lookup(name);
    const RationalFunction* v = r.value_of(s);
    REQUIRE(v != nullptr);
    return *v;
}

void check_table(const SolveResult& r, const std::vector<std::pair<std::string, std::string>>& rows) {
    for (const auto& [name, expect] : rows) {
        CAPTURE(name);
        CHECK(ratfunc_equal(value(r, name), parse_ratfunc(expect, r.table)));
    }
}

bool mentions(const RationalFunction& v, const SolveResult& r, const std::string& name) {
    Symbol s = r.table->lookup(name);
    return v.symbols().count(s) != 0;
}

}  // namespace

TEST_CASE("burgers-stationary coefficient table") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    SolveResult r = solve_system(ex.system);
    CHECK(r.fully_resolved());
    REQUIRE(r.assignments.size() == 9);
    check_table(r, {
        {"a_2", "(a_0*a_1)/(2*nu)"},
        {"a_3", "(a_0^2*a_1 + nu*a_1^2)/(6*nu^2)"},
        {"a_4", "(a_0^3*a_1 + 4*nu*a_0*a_1^2)/(24*nu^3)"},
        {"a_5", "(a_0^4*a_1 + 11*nu*a_0^2*a_1^2 + 4*nu^2*a_1^3)/(120*nu^4)"},
        {"a_6", "(a_0^5*a_1 + 26*nu*a_0^3*a_1^2 + 34*nu^2*a_0*a_1^3)/(720*nu^5)"},
        {"a_7", "(a_0^6*a_1 + 57*nu*a_0^4*a_1^2 + 180*nu^2*a_0^2*a_1^3 + 34*nu^3*a_1^4)/(5040*nu^6)"},
        {"a_8", "(a_0^7*a_1 + 120*nu*a_0^5*a_1^2 + 768*nu^2*a_0^3*a_1^3 + 496*nu^3*a_0*a_1^4)/(40320*nu^7)"},
        {"a_9", "(a_0^8*a_1 + 247*nu*a_0^6*a_1^2 + 2904*nu^2*a_0^4*a_1^3 + 4288*nu^3*a_0^2*a_1^4 + 496*nu^4*a_1^5)/(362880*nu^8)"},
        {"a_10", "(a_0^9*a_1 + 502*nu*a_0^7*a_1^2 + 10194*nu^2*a_0^5*a_1^3 + 28768*nu^3*a_0^3*a_1^4 + 11056*nu^4*a_0*a_1^5)/(3628800*nu^9)"},
    });
    // Divisions are by powers of nu only: a_0 = 0 stays specializable.
    Symbol nu = r.table->lookup("nu");
    for (const auto& a : r.assumptions)
        for (Symbol s : a.symbols()) CHECK(s == nu);
}

TEST_CASE("solver output verifies against its own system") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    SolveResult r = solve_system(ex.system);
    VerifyReport rep = verify_assignment(ex.system, r.assignment_map());
    CHECK(rep.all_zero());
}

TEST_CASE("perturbing one coefficient breaks exactly its equations") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    SolveResult r = solve_system(ex.system);
    for (const auto& [sym, val] : r.assignments) {
        CAPTURE(ex.system.table->name(sym));
        auto candidate = r.assignment_map();
        candidate[sym] = val + RationalFunction::from(Rational(1));
        VerifyReport rep = verify_assignment(ex.system, candidate);
        CHECK_FALSE(rep.all_zero());
        for (const auto& entry : rep.entries) {
            const AlgEquation* eq = nullptr;
            for (const auto& e : ex.system.equations)
                if (e.equation_index == entry.equation_index && e.monomial == entry.monomial)
                    eq = &e;
            REQUIRE(eq);
            const bool contains = eq->poly.symbols().count(sym) != 0;
            if (!contains) CHECK(entry.zero);
            if (!entry.zero) CHECK(contains);
        }
    }
}

TEST_CASE("odd particular branch via specialize") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    SolveResult r = solve_system(ex.system);
    std::map<Symbol, RationalFunction> bind{
        {r.table->lookup("a_0"), RationalFunction::from(Rational(0))}};
    SolveResult odd = specialize(r, bind);
    check_table(odd, {
        {"a_3", "(a_1^2)/(6*nu)"},
        {"a_5", "(a_1^3)/(30*nu^2)"},
        {"a_7", "(17*a_1^4)/(2520*nu^3)"},
        {"a_9", "(31*a_1^5)/(22680*nu^4)"},
    });
    for (const char* even : {"a_2", "a_4", "a_6", "a_8", "a_10"}) {
        CAPTURE(even);
        CHECK(value(odd, even).is_zero());
    }
    // Idempotence: an empty re-specialization changes nothing.
    SolveResult again = specialize(odd, {});
    for (const auto& [s, v] : odd.assignments) CHECK(ratfunc_equal(v, *again.value_of(s)));
}

TEST_CASE("all-zero seeds give the zero solution") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    SolveResult r = solve_system(ex.system);
    std::map<Symbol, RationalFunction> bind{
        {r.table->lookup("a_0"), RationalFunction::from(Rational(0))},
        {r.table->lookup("a_1"), RationalFunction::from(Rational(0))}};
    SolveResult zero = specialize(r, bind);
    for (const auto& [s, v] : zero.assignments) CHECK(v.is_zero());
}

TEST_CASE("kdv coefficient table") {
    Expansion ex = expand_pde(builtin("kdv"));
    SolveResult r = solve_system(ex.system);
    CHECK(r.fully_resolved());
    REQUIRE(r.assignments.size() == 6);
    check_table(r, {
        {"a_3", "(0 - (6*a_0*a_1 - c*a_1))/(6*k^2)"},
        {"a_4", "(0 - (6*a_0*a_2 - c*a_2 + 3*a_1^2))/(12*k^2)"},
        {"a_5", "(36*a_0^2*a_1 - 12*c*a_0*a_1 + c^2*a_1 - 36*k^2*a_1*a_2)/(120*k^4)"},
        {"a_6",
         "(36*a_0^2*a_2 - 12*c*a_0*a_2 + c^2*a_2 - 36*k^2*a_2^2 + 90*a_0*a_1^2 - 15*c*a_1^2)/(360*k^4)"},
        // Independently derived closed forms for the two highest orders.
        {"a_7",
         "(0 - a_1*(216*a_0^3 - 108*a_0^2*c - 1296*a_0*a_2*k^2 + 18*a_0*c^2 - 180*a_1^2*k^2 + "
         "216*a_2*c*k^2 - c^3))/(5040*k^6)"},
        {"a_8",
         "(0 - (216*a_0^3*a_2 + 2268*a_0^2*a_1^2 - 108*a_0^2*a_2*c - 756*a_0*a_1^2*c - "
         "1296*a_0*a_2^2*k^2 + 18*a_0*a_2*c^2 - 1188*a_1^2*a_2*k^2 + 63*a_1^2*c^2 + "
         "216*a_2^2*c*k^2 - a_2*c^3))/(20160*k^6)"},
    });
}

TEST_CASE("kdv even branch via specialize") {
    Expansion ex = expand_pde(builtin("kdv"));
    SolveResult r = solve_system(ex.system);
    std::map<Symbol, RationalFunction> bind{
        {r.table->lookup("a_1"), RationalFunction::from(Rational(0))}};
    SolveResult even = specialize(r, bind);
    check_table(even, {
        {"a_4", "(0 - (6*a_0*a_2 - c*a_2))/(12*k^2)"},
        {"a_6", "(36*a_0^2*a_2 - 12*c*a_0*a_2 - 36*a_2^2*k^2 + a_2*c^2)/(360*k^4)"},
        {"a_8",
         "(0 - (216*a_0^3*a_2 - 108*c*a_0^2*a_2 - 1296*a_0*a_2^2*k^2 + 18*c^2*a_0*a_2 + "
         "216*c*a_2^2*k^2 - c^3*a_2))/(20160*k^6)"},
    });
    for (const char* odd : {"a_3", "a_5", "a_7"}) {
        CAPTURE(odd);
        CHECK(value(even, odd).is_zero());
    }
}

TEST_CASE("burgers-xt resolves all twelve unknowns") {
    Expansion ex = expand_pde(builtin("burgers-xt"));
    SolveResult r = solve_system(ex.system);
    CHECK(r.fully_resolved());
    REQUIRE(r.assignments.size() == 12);
    check_table(r, {
        {"a_20", "(a_01 + a_00*a_10)/(2*nu)"},
        {"a_30", "(a_00^2*a_10 + a_01*a_00 + nu*a_10^2 + nu*a_11)/(6*nu^2)"},
        {"a_21",
         "(0 - (a_00^3*a_10 + a_01*a_00^2 + 4*nu*a_00*a_10^2 + nu*a_11*a_00 + 3*nu*a_01*a_10))/(2*nu^2)"},
        {"a_02",
         "(0 - (a_00^3*a_10 + a_01*a_00^2 + 4*nu*a_00*a_10^2 + 2*a_11*nu*a_00 + 4*a_01*nu*a_10))/(2*nu)"},
    });
    // Resolving the coupled tail requires dividing by a_00.
    bool has_a00_assumption = false;
    for (const auto& a : r.assumptions)
        if (mentions(a, r, "a_00")) has_a00_assumption = true;
    CHECK(has_a00_assumption);
    // Soundness against its own system.
    CHECK(verify_assignment(ex.system, r.assignment_map()).all_zero());
}

TEST_CASE("coupled-kdv resolves the fifteen-unknown system") {
    Expansion ex = expand_pde(builtin("coupled-kdv"));
    SolveResult r = solve_system(ex.system);
    CHECK(r.fully_resolved());
    REQUIRE(r.assignments.size() == 15);
    check_table(r, {
        {"b_3", "(3*a_0*b_1 + c*b_1)/(6*k^2)"},
        {"b_4", "(6*a_0*b_2 + 3*a_1*b_1 + 2*c*b_2)/(24*k^2)"},
        {"b_5", "(9*a_0^2*b_1 + c^2*b_1 + 6*c*a_0*b_1 + 12*a_1*b_2*k^2 + 6*a_2*b_1*k^2)/(120*k^4)"},
        {"b_6", "(9*a_0^2*b_2 + 27*a_0*a_1*b_1 + 6*a_0*b_2*c + 3*a_1*b_1*c + 18*a_2*b_2*k^2 - "
                "9*b_0*b_1*c_1 - 9*b_1^2*c_0 + b_2*c^2)/(360*k^4)"},
        {"c_3", "(3*a_0*c_1 + c*c_1)/(6*k^2)"},
        {"c_4", "(6*a_0*c_2 + 3*a_1*c_1 + 2*c*c_2)/(24*k^2)"},
        {"c_5", "(9*a_0^2*c_1 + 6*a_0*c*c_1 + 12*a_1*c_2*k^2 + 6*a_2*c_1*k^2 + c^2*c_1)/(120*k^4)"},
        {"c_6", "(9*a_0^2*c_2 + 27*a_0*a_1*c_1 + 6*a_0*c*c_2 + 3*a_1*c*c_1 + 18*a_2*c_2*k^2 - "
                "9*b_0*c_1^2 - 9*b_1*c_0*c_1 + c^2*c_2)/(360*k^4)"},
        {"a_3", "(3*a_0*a_1 - a_1*c - 3*b_0*c_1 - 3*b_1*c_0)/(3*k^2)"},
        {"a_4", "(6*a_0*a_2 + 3*a_1^2 - 2*a_2*c - 6*b_0*c_2 - 6*b_1*c_1 - 6*b_2*c_0)/(12*k^2)"},
    });
    CHECK(verify_assignment(ex.system, r.assignment_map()).all_zero());
}

TEST_CASE("boundary-layer solve returns a partial result") {
    Expansion ex = expand_pde(builtin("boundary-layer"));
    SolveResult r = solve_system(ex.system);
    CHECK_FALSE(r.fully_resolved());
    // The two forced-zero coefficients survive retraction.
    CHECK(value(r, "a_12").is_zero());
    CHECK(value(r, "a_13").is_zero());
    // Retained assignments reference seeds and params only.
    std::set<Symbol> known(ex.system.seeds.begin(), ex.system.seeds.end());
    for (Symbol p : ex.system.params) known.insert(p);
    for (const auto& [s, v] : r.assignments)
        for (Symbol sym : v.symbols()) CHECK(known.count(sym) == 1);
}

TEST_CASE("determinism of solve output") {
    for (const char* name : {"burgers-xt", "coupled-kdv"}) {
        CAPTURE(name);
        Expansion ex1 = expand_pde(builtin(name));
        SolveResult r1 = solve_system(ex1.system);
        Expansion ex2 = expand_pde(builtin(name));
        SolveResult r2 = solve_system(ex2.system);
        REQUIRE(r1.assignments.size() == r2.assignments.size());
        for (std::size_t i = 0; i < r1.assignments.size(); ++i) {
            CHECK(r1.assignments[i].first == r2.assignments[i].first);
            CHECK(r1.assignments[i].second.to_text() == r2.assignments[i].second.to_text());
        }
        REQUIRE(r1.assumptions.size() == r2.assumptions.size());
        for (std::size_t i = 0; i < r1.assumptions.size(); ++i)
            CHECK(r1.assumptions[i].to_text() == r2.assumptions[i].to_text());
    }
}

TEST_CASE("specialize rejects a vanishing assumption") {
    Expansion ex = expand_pde(builtin("boundary-layer"));
    SolveResult r = solve_system(ex.system);
    std::map<Symbol, RationalFunction> bind{
        {r.table->lookup("a_01"), RationalFunction::from(Rational(0))}};
    CHECK_THROWS_AS(specialize(r, bind), AssumptionViolated);
}

TEST_CASE("specialize binds seeds only") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    SolveResult r = solve_system(ex.system);
    std::map<Symbol, RationalFunction> bind{
        {r.table->lookup("a_5"), RationalFunction::from(Rational(0))}};
    CHECK_THROWS_AS(specialize(r, bind), Error);
}

TEST_CASE("inconsistent system reports its source") {
    Expansion ex = expand_pde(parse_problem(R"(problem contradiction
vars x
unknown U(x)
eq dx(U) + 1 = 0
ansatz U: total_degree 0
)"));
    CHECK_THROWS_AS(solve_system(ex.system), Inconsistent);
}

TEST_CASE("quadratic step forks per root") {
    // u^2 - s^2 = 0 with seed s: roots u = s and u = -s.
    ProblemSpec p = parse_problem(R"(problem quad
vars x
unknown U(x)
eq U*U - dx(U)*dx(U) = 0
ansatz U: total_degree 1
seeds U[1]
match total_degree 0
)");
    Expansion ex = expand_pde(p);
    REQUIRE(ex.system.equations.size() == 1);
    REQUIRE(ex.system.unknowns.size() == 1);
    SolveResult r = solve_system(ex.system);
    REQUIRE(r.branches.size() == 1);
    RationalFunction u0 = value(r, "U_0");
    RationalFunction u0b = r.branches[0].assignments[0].second;
    RationalFunction s = RationalFunction::from_symbol(r.table->lookup("U_1"), r.table);
    CHECK(ratfunc_equal(u0, s));
    CHECK(ratfunc_equal(u0b, -s));

    SolvePolicy principal;
    principal.root_selection = SolvePolicy::RootSelection::Principal;
    SolveResult rp = solve_system(ex.system, principal);
    CHECK(rp.branches.empty());

    SolvePolicy off;
    off.allow_quadratic = false;
    SolveResult roff = solve_system(ex.system, off);
    CHECK_FALSE(roff.fully_resolved());

    SolvePolicy tight;
    tight.max_branches = 1;
    CHECK_THROWS_AS(solve_system(ex.system, tight), BranchLimit);
}
