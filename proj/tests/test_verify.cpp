#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pssm/json_io.hpp"
#include "pssm/oracles.hpp"
#include "pssm/text.hpp"

using namespace pssm;

namespace {

// Independent univariate Taylor engine (dense, exact), used as the oracle for
// the closed forms. tan solves T' = 1 + T^2; tanh solves H' = 1 - H^2 and
// sech^2 = H'.
std::vector<Rational> ode_series(int sign, std::size_t n_terms) {
    std::vector<Rational> t(n_terms, Rational(0));
    for (std::size_t n = 0; n + 1 < n_terms; ++n) {
        Rational conv(0);
        for (std::size_t i = 0; i <= n; ++i) conv += t[i] * t[n - i];
        Rational rhs = (n == 0 ? Rational(1) : Rational(0)) + Rational(sign) * conv;
        t[n + 1] = rhs / Rational(static_cast<long>(n + 1));
    }
    return t;
}

std::vector<Rational> tan_series(std::size_t n) { return ode_series(+1, n); }

std::vector<Rational> sech2_series(std::size_t n) {
    std::vector<Rational> h = ode_series(-1, n + 1);
    std::vector<Rational> s(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) s[i] = Rational(static_cast<long>(i + 1)) * h[i + 1];
    return s;
}

SolveResult solve_builtin(const char* name, Expansion& ex) {
    ex = expand_pde(builtin(name));
    return solve_system(ex.system);
}

std::map<Symbol, RationalFunction> zero_seed(const SolveResult& r, const char* seed) {
    return {{r.table->lookup(seed), RationalFunction::from(Rational(0))}};
}

}  // namespace

TEST_CASE("independent Taylor oracle reproduces the frozen coefficients") {
    auto t = tan_series(12);
    CHECK(t[1] == Rational(1));
    CHECK(t[3] == make_rational(1, 3));
    CHECK(t[5] == make_rational(2, 15));
    CHECK(t[7] == make_rational(17, 315));
    CHECK(t[9] == make_rational(62, 2835));
    CHECK(t[11] == make_rational(1382, 155925));
    auto s = sech2_series(10);
    CHECK(s[0] == Rational(1));
    CHECK(s[2] == Rational(-1));
    CHECK(s[4] == make_rational(2, 3));
    CHECK(s[6] == make_rational(-17, 45));
    CHECK(s[8] == make_rational(62, 315));
}

TEST_CASE("residual all-zero for the solvable built-ins") {
    for (const char* name : {"burgers-stationary", "burgers-xt", "kdv", "coupled-kdv"}) {
        CAPTURE(name);
        Expansion ex;
        SolveResult r = solve_builtin(name, ex);
        ResidualReport rep = residual(ex, r.assignment_map());
        CHECK(rep.all_zero());
    }
}

TEST_CASE("residual flags a corrupted value by monomial") {
    Expansion ex;
    SolveResult r = solve_builtin("burgers-stationary", ex);
    auto values = r.assignment_map();
    Symbol a2 = r.table->lookup("a_2");
    values[a2] = values[a2] + RationalFunction::from(Rational(1));
    ResidualReport rep = residual(ex, values);
    CHECK_FALSE(rep.all_zero());
    bool names_a2_equation = false;
    for (const auto& e : rep.entries)
        if (!e.zero && e.monomial == ExpVec{0}) names_a2_equation = true;
    CHECK(names_a2_equation);
}

TEST_CASE("residual of the zero solution") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    std::map<Symbol, RationalFunction> zero;
    for (Symbol u : ex.system.unknowns) zero.emplace(u, RationalFunction());
    for (Symbol s : ex.system.seeds) zero.emplace(s, RationalFunction());
    ResidualReport rep = residual(ex, zero);
    CHECK(rep.all_zero());
}

TEST_CASE("exact evaluation of the odd branch") {
    Expansion ex;
    SolveResult r = solve_builtin("burgers-stationary", ex);
    SolveResult odd = specialize(r, zero_seed(r, "a_0"));
    std::map<Symbol, Rational> bind{{r.table->lookup("a_0"), Rational(0)},
                                    {r.table->lookup("a_1"), Rational(1)},
                                    {r.table->lookup("nu"), Rational(1)}};
    NumericSeries s = numeric_series(ex, "U", odd, bind);
    CHECK(eval_exact(s, {Rational(0)}) == Rational(0));
    Rational at_half = eval_exact(s, {make_rational(1, 2)});
    Rational expect = make_rational(1, 2) + make_rational(1, 6) * make_rational(1, 8) +
                      make_rational(1, 30) * make_rational(1, 32) +
                      make_rational(17, 2520) * make_rational(1, 128) +
                      make_rational(31, 22680) * make_rational(1, 512);
    CHECK(at_half == expect);
    // Bit-reproducible: same computation, same value.
    CHECK(eval_exact(s, {make_rational(1, 2)}) == at_half);
}

TEST_CASE("odd-branch coefficients equal the tan oracle Taylor expansion") {
    Expansion ex;
    SolveResult r = solve_builtin("burgers-stationary", ex);
    SolveResult odd = specialize(r, zero_seed(r, "a_0"));
    std::map<Symbol, Rational> bind{{r.table->lookup("a_0"), Rational(0)},
                                    {r.table->lookup("a_1"), Rational(1)},
                                    {r.table->lookup("nu"), Rational(1)}};
    NumericSeries s = numeric_series(ex, "U", odd, bind);
    // sqrt(2) tan(x/sqrt(2)): coefficient of x^(2k+1) is tan_{2k+1} / 2^k.
    auto t = tan_series(11);
    std::map<unsigned, Rational> got;
    for (const auto& [e, c] : s.terms) got[e[0]] = c;
    Rational pow2(1);
    for (unsigned k = 0; 2 * k + 1 <= 9; ++k) {
        CAPTURE(k);
        CHECK(got.at(2 * k + 1) == t[2 * k + 1] / pow2);
        pow2 *= 2;
    }
}

TEST_CASE("kdv even branch equals the soliton Taylor expansion") {
    Expansion ex;
    SolveResult r = solve_builtin("kdv", ex);
    SolveResult even = specialize(r, zero_seed(r, "a_1"));
    std::map<Symbol, Rational> bind{{r.table->lookup("a_0"), make_rational(1, 2)},
                                    {r.table->lookup("a_1"), Rational(0)},
                                    {r.table->lookup("a_2"), make_rational(-1, 8)},
                                    {r.table->lookup("c"), Rational(1)},
                                    {r.table->lookup("k"), Rational(1)}};
    NumericSeries s = numeric_series(ex, "U", even, bind);
    CHECK(eval_exact(s, {Rational(0)}) == make_rational(1, 2));
    auto sech2 = sech2_series(9);
    std::map<unsigned, Rational> got;
    for (const auto& [e, c] : s.terms) got[e[0]] = c;
    // phi(z) = (1/2) sech^2(z/2): coefficient of z^(2j) is sech2_{2j} / 2^(2j+1).
    Rational scale = make_rational(1, 2);
    for (unsigned j = 0; 2 * j <= 8; ++j) {
        CAPTURE(j);
        CHECK(got.at(2 * j) == sech2[2 * j] * scale);
        scale /= 4;
    }
}

TEST_CASE("compare against the closed-form oracles") {
    Expansion ex;
    SolveResult r = solve_builtin("burgers-stationary", ex);
    SolveResult odd = specialize(r, zero_seed(r, "a_0"));
    std::map<Symbol, Rational> bind{{r.table->lookup("a_0"), Rational(0)},
                                    {r.table->lookup("a_1"), Rational(1)},
                                    {r.table->lookup("nu"), Rational(1)}};
    NumericSeries s = numeric_series(ex, "U", odd, bind);
    std::vector<double> grid;
    for (int i = -10; i <= 10; ++i) grid.push_back(i * 0.05);
    OracleSpec tan_oracle;
    tan_oracle.kind = OracleSpec::Kind::BurgersTan;
    CompareReport rep = compare(s, tan_oracle, grid);
    CHECK(rep.max_abs_error <= 1e-4);
    CHECK(rep.rows[10].abs_error == 0.0);  // x = 0
    CHECK(rep.first_omitted_order == 10);

    Expansion kx;
    SolveResult kr = solve_builtin("kdv", kx);
    SolveResult even = specialize(kr, zero_seed(kr, "a_1"));
    std::map<Symbol, Rational> kb{{kr.table->lookup("a_0"), make_rational(1, 2)},
                                  {kr.table->lookup("a_1"), Rational(0)},
                                  {kr.table->lookup("a_2"), make_rational(-1, 8)},
                                  {kr.table->lookup("c"), Rational(1)},
                                  {kr.table->lookup("k"), Rational(1)}};
    NumericSeries ks = numeric_series(kx, "U", even, kb);
    OracleSpec sech_oracle;
    sech_oracle.kind = OracleSpec::Kind::KdvSech;
    CompareReport krep = compare(ks, sech_oracle, grid);
    CHECK(krep.max_abs_error <= 1e-4);
}

TEST_CASE("truncation error scales with the first omitted order") {
    Expansion ex;
    SolveResult r = solve_builtin("burgers-stationary", ex);
    SolveResult odd = specialize(r, zero_seed(r, "a_0"));
    std::map<Symbol, Rational> bind{{r.table->lookup("a_0"), Rational(0)},
                                    {r.table->lookup("a_1"), Rational(1)},
                                    {r.table->lookup("nu"), Rational(1)}};
    NumericSeries s = numeric_series(ex, "U", odd, bind);
    const double e_half = std::abs(eval_float(s, {0.5}) - burgers_tan(1, 1, 0.5));
    const double e_quarter = std::abs(eval_float(s, {0.25}) - burgers_tan(1, 1, 0.25));
    REQUIRE(e_quarter > 0.0);
    const double factor = e_half / e_quarter;
    // Degree-9 series, degree-11 leading error term.
    CHECK(factor >= 512.0);
    CHECK(factor <= 8192.0);
}

TEST_CASE("tan oracle satisfies its own equation under finite differences") {
    // Extended precision for the second difference; h = 1e-6 is below the
    // double-precision roundoff floor for d2u.
    auto u_ld = [](long double x) -> long double {
        return sqrtl(2.0L) * tanl(x / sqrtl(2.0L));
    };
    const long double h = 1e-6L;
    for (double x = -0.5; x <= 0.5; x += 0.1) {
        const long double u = u_ld(x);
        CHECK(std::abs(static_cast<double>(u) - burgers_tan(1, 1, x)) <= 1e-12);
        const long double du = (u_ld(x + h) - u_ld(x - h)) / (2 * h);
        const long double d2u = (u_ld(x + h) - 2 * u + u_ld(x - h)) / (h * h);
        CHECK(std::abs(static_cast<double>(u * du - d2u)) <= 1e-5);
    }
}

TEST_CASE("oracle domain checks") {
    CHECK_THROWS_AS(burgers_tan(1, 1, 3.0), OutOfDomain);
    CHECK_THROWS_AS(burgers_tan(-1, 1, 0.1), OutOfDomain);
    CHECK_THROWS_AS(kdv_sech(-1, 1, 0.0), OutOfDomain);
    CHECK(kdv_sech(1, 1, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("time factor solves the logistic equation") {
    const double alpha = 1.0, beta = 1.0, C = 1.0, h = 1e-5;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
        const double a = burgers_time_factor(alpha, beta, C, t);
        const double da =
            (burgers_time_factor(alpha, beta, C, t + h) - burgers_time_factor(alpha, beta, C, t - h)) /
            (2 * h);
        CHECK(std::abs(da - (alpha * a - beta * a * a)) <= 1e-8);
    }
    // alpha = 0 collapses the solution to zero.
    CHECK(burgers_time_factor(0.0, 1.0, 1.0, 0.7) == 0.0);
    CHECK(time_factor_constant(1.0, 1.0, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(time_factor_constant(1.0, 1.0, 0.0), OutOfDomain);
}

TEST_CASE("assumption checks against numeric bindings") {
    Expansion ex;
    SolveResult r = solve_builtin("burgers-stationary", ex);
    std::map<Symbol, Rational> bad{{r.table->lookup("nu"), Rational(0)},
                                   {r.table->lookup("a_0"), Rational(1)},
                                   {r.table->lookup("a_1"), Rational(1)}};
    CHECK_THROWS_AS(check_assumptions(r, bad), AssumptionViolated);
    std::map<Symbol, Rational> good{{r.table->lookup("nu"), Rational(1)},
                                    {r.table->lookup("a_0"), Rational(1)},
                                    {r.table->lookup("a_1"), Rational(1)}};
    CHECK_NOTHROW(check_assumptions(r, good));
}

TEST_CASE("candidate JSON parsing") {
    Expansion ex = expand_pde(builtin("burgers-stationary"));
    auto cand = parse_candidate_json(
        R"json({"schema": 1, "assignments": {"a_2": "(a_0*a_1)/(2*nu)"}})json", ex.problem.table);
    CHECK(cand.size() == 1);
    CHECK_THROWS_AS(
        parse_candidate_json(R"({"assignments": {"zzz": "1"}})", ex.problem.table), SchemaError);
    CHECK_THROWS_AS(parse_candidate_json(R"([1,2])", ex.problem.table), SchemaError);
}

TEST_CASE("residual can re-expand the same problem") {
    ProblemSpec p = builtin("kdv");
    Expansion ex = expand_pde(p);
    SolveResult r = solve_system(ex.system);
    ResidualReport rep = residual(p, r);
    CHECK(rep.all_zero());
    CHECK(rep.max_checked_degree == 5);
}
