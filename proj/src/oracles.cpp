#include "pssm/oracles.hpp"

#include <cmath>

namespace pssm {

double burgers_tan(double a1, double nu, double x) {
    if (!(a1 / nu > 0)) throw OutOfDomain("burgers_tan requires a1/nu > 0");
    const double s = std::sqrt(a1 / (2.0 * nu));
    if (!(std::abs(x) * s < M_PI / 2.0)) throw OutOfDomain("burgers_tan argument outside (-pi/2, pi/2)");
    return std::sqrt(2.0 * nu * a1) * std::tan(x * s);
}

double kdv_sech(double c, double k, double z) {
    if (!(c > 0) || k == 0.0) throw OutOfDomain("kdv_sech requires c > 0 and k != 0");
    const double w = std::sqrt(c) * z / (2.0 * k);
    const double sech = 1.0 / std::cosh(w);
    return 0.5 * c * sech * sech;
}

double burgers_time_factor(double alpha, double beta, double C, double t) {
    const double den = beta + C * std::exp(-alpha * t);
    if (den == 0.0) throw OutOfDomain("time factor denominator vanished");
    return alpha / den;
}

double time_factor_constant(double alpha, double beta, double a0) {
    if (a0 == 0.0) throw OutOfDomain("a(0) must be nonzero");
    return alpha / a0 - beta;
}

double oracle_value(const OracleSpec& o, double point) {
    switch (o.kind) {
        case OracleSpec::Kind::BurgersTan:
            return burgers_tan(o.a1, o.nu, point);
        case OracleSpec::Kind::KdvSech:
            return kdv_sech(o.c, o.k, point);
        case OracleSpec::Kind::BurgersTimeFactor:
            return burgers_time_factor(o.alpha, o.beta, o.c0, point);
    }
    throw Error("unreachable");
}

CompareReport compare(const NumericSeries& s, const OracleSpec& o, const std::vector<double>& grid) {
    CompareReport report;
    unsigned max_order = 0;
    for (const auto& [e, c] : s.terms) max_order = std::max(max_order, total_degree(e));
    report.first_omitted_order = max_order + 1;
    for (double x : grid) {
        CompareRow row;
        row.point = {x};
        row.series = eval_float(s, {x});
        row.oracle = oracle_value(o, x);
        row.abs_error = std::abs(row.series - row.oracle);
        report.max_abs_error = std::max(report.max_abs_error, row.abs_error);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace pssm
