#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pssm/series.hpp"
#include "pssm/text.hpp"

using namespace pssm;

namespace {

RationalFunction rf_const(int n, int d = 1) { return RationalFunction::from(make_rational(n, d)); }

TruncSeries random_series(std::mt19937& rng, const VarSet& vars, unsigned max_deg,
                          const SupportPolicy* restrict = nullptr) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> keep(0, 2);
    SupportPolicy policy = restrict ? *restrict : SupportPolicy::total_degree(max_deg);
    TruncSeries s(vars, policy);
    for (const auto& e : policy.enumerate(vars.size())) {
        if (keep(rng) == 0) continue;
        int n = num(rng);
        if (n == 0) continue;
        s.set_coefficient(e, rf_const(n, den(rng)));
    }
    return s;
}

// Dense full convolution, independent of series_mul.
std::map<ExpVec, Rational> brute_force_product(const TruncSeries& a, const TruncSeries& b) {
    std::map<ExpVec, Rational> out;
    for (const auto& [ea, ca] : a.coeffs())
        for (const auto& [eb, cb] : b.coeffs()) {
            ExpVec e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            Rational prod = ca.constant_value() * cb.constant_value();
            auto [it, inserted] = out.try_emplace(e, prod);
            if (!inserted) it->second += prod;
        }
    return out;
}

}  // namespace

TEST_CASE("ansatz shapes") {
    VarSet xt{{"x", "t"}};
    auto table = std::make_shared<SymbolTable>();
    TruncSeries s = ansatz("U", xt, SupportPolicy::total_degree(2), default_namer(), table);
    CHECK(s.coeffs().size() == 6);
    CHECK(table->contains("U_0_0"));
    CHECK(table->contains("U_0_1"));
    CHECK(table->contains("U_0_2"));
    CHECK(table->contains("U_1_1"));
    CHECK(table->contains("U_2_0"));

    VarSet z{{"z"}};
    auto t2 = std::make_shared<SymbolTable>();
    TruncSeries phi = ansatz("phi", z, SupportPolicy::parity({Parity::Even}, 8), default_namer(), t2);
    std::vector<ExpVec> expect{{0}, {2}, {4}, {6}, {8}};
    std::vector<ExpVec> got;
    for (const auto& [e, c] : phi.coeffs()) got.push_back(e);
    CHECK(got == expect);

    VarSet xy{{"x", "y"}};
    auto t3 = std::make_shared<SymbolTable>();
    std::set<ExpVec, GradedLexLess> support{{0, 0}, {1, 0}, {1, 1}, {1, 4}, {2, 0},
                                            {0, 2}, {2, 1}, {2, 2}, {2, 3}};
    TruncSeries bl =
        ansatz("U", xy, SupportPolicy::explicit_set(support), prefix_namer("a"), t3);
    CHECK(bl.coeffs().size() == 9);
    CHECK(t3->contains("a_14"));
    CHECK(t3->contains("a_23"));
    CHECK_FALSE(t3->contains("a_03"));
}

TEST_CASE("ansatz errors") {
    VarSet z{{"z"}};
    auto table = std::make_shared<SymbolTable>();
    CHECK_THROWS_AS(
        ansatz("phi", z, SupportPolicy::parity({Parity::Even}, std::nullopt), default_namer(), table),
        UnboundedSupport);
    ansatz("U", z, SupportPolicy::total_degree(2), default_namer(), table);
    CHECK_THROWS_AS(ansatz("U", z, SupportPolicy::total_degree(2), default_namer(), table), Error);
}

TEST_CASE("series_add") {
    VarSet z{{"z"}};
    std::mt19937 rng(5);
    TruncSeries s = random_series(rng, z, 4);
    TruncSeries zero(z, SupportPolicy::total_degree(0));
    TruncSeries sum = series_add(s, zero);
    CHECK(sum.coeffs().size() == s.coeffs().size());
    for (const auto& [e, c] : sum.coeffs()) CHECK(ratfunc_equal(c, coefficient(s, e)));

    TruncSeries a(z, SupportPolicy::total_degree(1));
    a.set_coefficient({0}, rf_const(3));
    a.set_coefficient({1}, rf_const(2));
    TruncSeries b(z, SupportPolicy::total_degree(1));
    b.set_coefficient({1}, rf_const(-2));
    TruncSeries c = series_add(a, b);
    CHECK(c.coeffs().size() == 1);
    CHECK(coefficient(c, {0}).to_text() == "3");

    // Disjoint parities union into a general series.
    auto table = std::make_shared<SymbolTable>();
    TruncSeries even = ansatz("E", z, SupportPolicy::parity({Parity::Even}, 4), default_namer(), table);
    TruncSeries odd = ansatz("O", z, SupportPolicy::parity({Parity::Odd}, 4), default_namer(), table);
    TruncSeries both = series_add(even, odd);
    CHECK(both.coeffs().size() == even.coeffs().size() + odd.coeffs().size());

    VarSet xy{{"x", "y"}};
    TruncSeries other(xy, SupportPolicy::total_degree(1));
    CHECK_THROWS_AS(series_add(a, other), VarMismatch);
}

TEST_CASE("series_mul constant term of U*U'") {
    VarSet x{{"x"}};
    auto table = std::make_shared<SymbolTable>();
    TruncSeries u = ansatz("a", x, SupportPolicy::total_degree(4), prefix_namer("a"), table);
    TruncSeries du = series_diff(u, "x", 1);
    TruncSeries prod = series_mul(u, du, 4);
    RationalFunction c0 = coefficient(prod, {0});
    RationalFunction expect = parse_ratfunc("a_0*a_1", table, false);
    CHECK(ratfunc_equal(c0, expect));
}

TEST_CASE("series_mul identity and truncation") {
    VarSet z{{"z"}};
    std::mt19937 rng(11);
    TruncSeries s = random_series(rng, z, 5);
    TruncSeries one = series_const(z, rf_const(1));
    TruncSeries p = series_mul(s, one, 3);
    for (const auto& [e, c] : p.coeffs()) {
        CHECK(total_degree(e) <= 3);
        CHECK(ratfunc_equal(c, coefficient(s, e)));
    }
}

TEST_CASE("truncated product agrees with brute-force convolution") {
    VarSet xy{{"x", "y"}};
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<unsigned> bound(0, 6);
    for (int i = 0; i < 400; ++i) {
        TruncSeries a = random_series(rng, xy, 4);
        TruncSeries b = random_series(rng, xy, 4);
        unsigned out_bound = bound(rng);
        TruncSeries p = series_mul(a, b, out_bound);
        auto full = brute_force_product(a, b);
        for (const auto& [e, c] : full) {
            if (total_degree(e) > out_bound) continue;
            CHECK(coefficient(p, e).constant_value() == c);
        }
        for (const auto& [e, c] : p.coeffs()) {
            REQUIRE(full.count(e) == 1);
            CHECK(c.constant_value() == full.at(e));
        }
    }
}

TEST_CASE("series_diff") {
    VarSet xy{{"x", "y"}};
    auto table = std::make_shared<SymbolTable>();
    TruncSeries u = ansatz("a", xy, SupportPolicy::total_degree(3), prefix_namer("a"), table);
    TruncSeries d3 = series_diff(u, "y", 3);
    RationalFunction c = coefficient(d3, {0, 0});
    CHECK(ratfunc_equal(c, parse_ratfunc("6*a_03", table, false)));

    VarSet z{{"z"}};
    TruncSeries k = series_const(z, rf_const(7));
    CHECK(series_diff(k, "z", 1).is_zero());

    auto t2 = std::make_shared<SymbolTable>();
    TruncSeries s = ansatz("a", z, SupportPolicy::total_degree(4), prefix_namer("a"), t2);
    TruncSeries d2 = series_diff(s, "z", 2);
    CHECK(ratfunc_equal(coefficient(d2, {2}), parse_ratfunc("12*a_4", t2, false)));
}

TEST_CASE("Leibniz rule on random series") {
    VarSet xy{{"x", "y"}};
    std::mt19937 rng(77);
    for (int i = 0; i < 100; ++i) {
        const unsigned n = 4;
        TruncSeries a = random_series(rng, xy, n);
        TruncSeries b = random_series(rng, xy, n);
        TruncSeries lhs = series_diff(series_mul(a, b, n), "x", 1);
        TruncSeries rhs = series_add(series_mul(series_diff(a, "x", 1), b, n - 1),
                                     series_mul(a, series_diff(b, "x", 1), n - 1));
        for (const auto& e : SupportPolicy::total_degree(n - 1).enumerate(2))
            CHECK(ratfunc_equal(coefficient(lhs, e), coefficient(rhs, e)));
    }
}

TEST_CASE("mixed partial derivatives commute") {
    VarSet xy{{"x", "y"}};
    std::mt19937 rng(78);
    for (int i = 0; i < 100; ++i) {
        TruncSeries s = random_series(rng, xy, 5);
        TruncSeries xy1 = series_diff(series_diff(s, "x", 1), "y", 1);
        TruncSeries yx1 = series_diff(series_diff(s, "y", 1), "x", 1);
        CHECK(xy1.coeffs().size() == yx1.coeffs().size());
        for (const auto& [e, c] : xy1.coeffs()) CHECK(ratfunc_equal(c, coefficient(yx1, e)));
    }
}

TEST_CASE("parity closure") {
    VarSet z{{"z"}};
    std::mt19937 rng(79);
    SupportPolicy even = SupportPolicy::parity({Parity::Even}, 6);
    SupportPolicy odd = SupportPolicy::parity({Parity::Odd}, 6);
    for (int i = 0; i < 60; ++i) {
        TruncSeries e1 = random_series(rng, z, 6, &even);
        TruncSeries e2 = random_series(rng, z, 6, &even);
        TruncSeries o1 = random_series(rng, z, 6, &odd);
        TruncSeries o2 = random_series(rng, z, 6, &odd);
        TruncSeries ee = series_mul(e1, e2, 6), oo = series_mul(o1, o2, 6),
                    oe = series_mul(o1, e1, 6);
        for (const auto& [e, c] : ee.coeffs()) CHECK(e[0] % 2 == 0);
        for (const auto& [e, c] : oo.coeffs()) CHECK(e[0] % 2 == 0);
        for (const auto& [e, c] : oe.coeffs()) CHECK(e[0] % 2 == 1);
    }
}

TEST_CASE("coefficient extraction") {
    VarSet xy{{"x", "y"}};
    auto table = std::make_shared<SymbolTable>();
    TruncSeries u = ansatz("a", xy, SupportPolicy::total_degree(3), prefix_namer("a"), table);
    CHECK(coefficient(u, {1, 1}).to_text() == "a_11");

    TruncSeries zero(xy, SupportPolicy::total_degree(0));
    CHECK(coefficient(zero, {2, 1}).is_zero());

    // Boundary-layer (0,0) of U_y * U_xy.
    auto t2 = std::make_shared<SymbolTable>();
    std::set<ExpVec, GradedLexLess> support{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}, {2, 0},
                                            {1, 2}, {2, 1}, {1, 3}, {2, 2}, {1, 4}, {2, 3}};
    TruncSeries bl = ansatz("U", xy, SupportPolicy::explicit_set(support), prefix_namer("a"), t2);
    TruncSeries uy = series_diff(bl, "y", 1);
    TruncSeries uxy = series_diff(series_diff(bl, "x", 1), "y", 1);
    RationalFunction c = coefficient(series_mul(uy, uxy, 3), {0, 0});
    CHECK(ratfunc_equal(c, parse_ratfunc("a_01*a_11", t2, false)));
}

TEST_CASE("series text form") {
    VarSet z{{"z"}};
    auto table = std::make_shared<SymbolTable>();
    TruncSeries s = ansatz("a", z, SupportPolicy::total_degree(2), prefix_namer("a"), table);
    CHECK(s.to_text() == "a_0 + a_1*z + a_2*z^2");
}
