#pragma once

#include <string>
#include <vector>

#include "pssm/verify.hpp"

namespace pssm {

// Closed-form reference solutions used for numeric cross-checks.
struct OracleSpec {
    enum class Kind { BurgersTan, KdvSech, BurgersTimeFactor };
    Kind kind = Kind::BurgersTan;
    // BurgersTan: a1, nu. KdvSech: c, k. BurgersTimeFactor: alpha, beta, c0.
    double a1 = 1.0, nu = 1.0;
    double c = 1.0, k = 1.0;
    double alpha = 1.0, beta = 1.0, c0 = 1.0;
};

// U(x) = sqrt(2 nu a1) * tan(x * sqrt(a1 / (2 nu))); valid while the tangent
// argument stays inside (-pi/2, pi/2).
double burgers_tan(double a1, double nu, double x);

// phi(z) = (c/2) sech^2(sqrt(c) z / (2k)).
double kdv_sech(double c, double k, double z);

// a(t) = alpha / (beta + C e^{-alpha t}); the pointwise multiplicative time
// factor with spatial quantities frozen at one x (quasi-separation).
double burgers_time_factor(double alpha, double beta, double C, double t);
// C fixed by the initial value a(0) = a0.
double time_factor_constant(double alpha, double beta, double a0);

double oracle_value(const OracleSpec& o, double point);

struct CompareRow {
    std::vector<double> point;
    double series = 0.0;
    double oracle = 0.0;
    double abs_error = 0.0;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    double max_abs_error = 0.0;
    unsigned first_omitted_order = 0;  // expected error scale ~ point^order
};

// Pointwise |series - oracle| over a one-variable grid.
CompareReport compare(const NumericSeries& s, const OracleSpec& o, const std::vector<double>& grid);

}  // namespace pssm
