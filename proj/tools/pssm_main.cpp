#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pssm/json_io.hpp"
#include "pssm/text.hpp"

using namespace pssm;

namespace {

[[noreturn]] void die(const std::string& msg) {
    const char* color = std::getenv("PSSM_COLOR");
    const bool use_color = color && std::string(color) == "1";
    std::cerr << (use_color ? "\033[31merror:\033[0m " : "error: ") << msg << "\n";
    std::exit(1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) die("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die("cannot write '" + out_path + "'");
    out << content;
}

struct ProblemArgs {
    std::string builtin_name;
    std::string file_path;
    unsigned order = 0;
    std::string set_arg;
    std::string policy_arg;
    std::string format = "json";
    std::string out_path;
};

void add_problem_flags(CLI::App* cmd, ProblemArgs& a) {
    cmd->add_option("--problem", a.builtin_name, "built-in problem name");
    cmd->add_option("--file", a.file_path, "path to a .pde problem file");
    cmd->add_option("--order", a.order, "override the ansatz total degree");
    cmd->add_option("--set", a.set_arg, "comma-separated symbol=value bindings");
    cmd->add_option("--policy", a.policy_arg, "quadratic=on|off,branches=N,roots=both|principal");
    cmd->add_option("--format", a.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", a.out_path, "output path (default stdout)");
}

ProblemSpec load_problem(const ProblemArgs& a) {
    if (a.builtin_name.empty() == a.file_path.empty())
        die("exactly one of --problem or --file is required");
    ProblemSpec p = a.builtin_name.empty() ? parse_problem(read_file(a.file_path))
                                           : builtin(a.builtin_name);
    if (a.order > 0) {
        for (auto& u : p.unknowns) {
            if (u.support.kind() == SupportPolicy::Kind::TotalDegree)
                u.support = SupportPolicy::total_degree(a.order);
            else if (u.support.kind() == SupportPolicy::Kind::Parity)
                u.support = SupportPolicy::parity(u.support.parities(), a.order);
            else
                die("--order cannot override an explicit support");
        }
        p.match = MatchSpec{};  // fall back to the reliable default
    }
    return p;
}

SolvePolicy parse_policy(const std::string& arg) {
    SolvePolicy policy;
    if (arg.empty()) return policy;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) die("bad --policy entry '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "quadratic") {
            if (val != "on" && val != "off") die("quadratic must be on or off");
            policy.allow_quadratic = val == "on";
        } else if (key == "branches") {
            policy.max_branches = static_cast<unsigned>(std::stoul(val));
        } else if (key == "roots") {
            if (val == "both")
                policy.root_selection = SolvePolicy::RootSelection::Both;
            else if (val == "principal")
                policy.root_selection = SolvePolicy::RootSelection::Principal;
            else
                die("roots must be both or principal");
        } else {
            die("unknown --policy key '" + key + "'");
        }
    }
    return policy;
}

std::map<Symbol, RationalFunction> parse_bindings(const std::string& arg,
                                                  const SymbolTablePtr& table) {
    std::map<Symbol, RationalFunction> out;
    if (arg.empty()) return out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) die("bad --set entry '" + item + "'");
        std::string name = item.substr(0, eq);
        auto s = table->find(name);
        if (!s) die("--set names unknown symbol '" + name + "'");
        out.emplace(*s, parse_ratfunc(item.substr(eq + 1), table, false));
    }
    return out;
}

std::string result_text(const SolveResult& r, const Expansion* ex = nullptr) {
    std::ostringstream os;
    for (const auto& [s, v] : r.assignments)
        os << r.table->name(s) << " = " << v.to_text() << "\n";
    if (ex && r.fully_resolved()) {
        const auto values = r.substitution_map();
        for (const auto& [fn, series] : ex->series) {
            TruncSeries solved(series.vars(), series.support());
            for (const auto& [e, coeff] : series.coeffs())
                solved.set_coefficient(e, coeff.substitute(values));
            os << fn << " = " << solved.to_text() << "\n";
        }
    }
    if (!r.assumptions.empty()) {
        os << "assuming nonzero:";
        for (const auto& a : r.assumptions) os << " " << a.to_text();
        os << "\n";
    }
    for (const auto& eq : r.unresolved)
        os << "unresolved: " << eq.poly.to_text() << " = 0\n";
    for (std::size_t i = 0; i < r.branches.size(); ++i) {
        os << "-- branch " << i + 1 << " --\n" << result_text(r.branches[i]);
    }
    return os.str();
}

int cmd_solve(const ProblemArgs& args) {
    ProblemSpec p = load_problem(args);
    Expansion ex = expand_pde(p);
    SolveResult r = solve_system(ex.system, parse_policy(args.policy_arg));
    auto bindings = parse_bindings(args.set_arg, ex.problem.table);
    if (!bindings.empty()) r = specialize(r, bindings);
    write_output(args.out_path, args.format == "text" ? result_text(r, &ex)
                                                      : solve_result_to_json(r, ex.problem.name));
    return r.fully_resolved() ? 0 : 2;
}

int cmd_verify(const ProblemArgs& args, const std::string& candidate_path) {
    ProblemSpec p = load_problem(args);
    Expansion ex = expand_pde(p);
    SolveResult solved = solve_system(ex.system, parse_policy(args.policy_arg));
    std::map<Symbol, RationalFunction> candidate = solved.assignment_map();
    auto file_values = parse_candidate_json(read_file(candidate_path), ex.problem.table);
    for (const auto& [s, v] : file_values) candidate.insert_or_assign(s, v);
    for (Symbol u : ex.system.unknowns)
        if (!candidate.count(u))
            throw SchemaError("no value for unknown '" + ex.problem.table->name(u) + "'");
    ResidualReport rep = residual(ex, candidate);
    write_output(args.out_path, residual_report_to_json(rep, ex.problem.name));
    return rep.all_zero() ? 0 : 2;
}

int cmd_residual(const ProblemArgs& args) {
    ProblemSpec p = load_problem(args);
    Expansion ex = expand_pde(p);
    SolveResult r = solve_system(ex.system, parse_policy(args.policy_arg));
    auto bindings = parse_bindings(args.set_arg, ex.problem.table);
    if (!bindings.empty()) r = specialize(r, bindings);
    ResidualReport rep = residual(ex, r.assignment_map());
    write_output(args.out_path, residual_report_to_json(rep, ex.problem.name));
    return rep.all_zero() ? 0 : 2;
}

int cmd_export(const ProblemArgs& args) {
    ProblemSpec p = load_problem(args);
    Expansion ex = expand_pde(p);
    write_output(args.out_path, system_to_json(ex));
    return 0;
}

struct GridAxis {
    std::string var;
    std::vector<Rational> points;
};

GridAxis parse_axis(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq == std::string::npos) die("bad --var '" + arg + "' (want name=start:stop:step)");
    GridAxis axis;
    axis.var = arg.substr(0, eq);
    std::string spec = arg.substr(eq + 1);
    auto parse_decimal = [](const std::string& s) -> Rational {
        auto dot = s.find('.');
        if (dot == std::string::npos) return rational_from_string(s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Rational num = rational_from_string(digits);
        Rational den(1);
        for (std::size_t i = 0; i < s.size() - dot - 1; ++i) den *= 10;
        return num / den;
    };
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() == 1) {
        axis.points.push_back(parse_decimal(parts[0]));
    } else if (parts.size() == 3) {
        Rational start = parse_decimal(parts[0]);
        Rational stop = parse_decimal(parts[1]);
        Rational step = parse_decimal(parts[2]);
        if (sgn(step) <= 0) die("grid step must be positive");
        for (Rational x = start; x <= stop; x += step) axis.points.push_back(x);
    } else {
        die("bad grid '" + spec + "'");
    }
    return axis;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_eval(const ProblemArgs& args, const std::vector<std::string>& var_args,
             const std::string& oracle_name, const std::string& func_arg,
             const std::string& precision) {
    ProblemSpec p = load_problem(args);
    Expansion ex = expand_pde(p);
    SolveResult r = solve_system(ex.system, parse_policy(args.policy_arg));
    auto rf_bindings = parse_bindings(args.set_arg, ex.problem.table);
    std::map<Symbol, Rational> bindings;
    for (const auto& [s, v] : rf_bindings) {
        if (!v.is_constant()) die("--set for eval must bind numbers");
        bindings.emplace(s, v.constant_value());
    }
    check_assumptions(r, bindings);

    std::string func = func_arg;
    if (func.empty()) func = ex.problem.unknowns.front().func;
    NumericSeries series = numeric_series(ex, func, r, bindings);

    std::vector<GridAxis> axes;
    for (const auto& v : var_args) axes.push_back(parse_axis(v));
    if (axes.size() != ex.problem.vars.size()) die("need one --var per problem variable");
    for (std::size_t i = 0; i < axes.size(); ++i)
        if (axes[i].var != ex.problem.vars.names[i])
            die("--var order must match the problem variables (" + ex.problem.vars.names[i] + ")");

    OracleSpec oracle;
    bool with_oracle = !oracle_name.empty();
    if (with_oracle) {
        if (axes.size() != 1) die("--oracle applies to one-variable problems");
        auto get = [&](const char* name) -> double {
            auto s = ex.problem.table->find(name);
            if (!s || !bindings.count(*s)) die(std::string("--oracle needs --set ") + name);
            return bindings.at(*s).get_d();
        };
        if (oracle_name == "tan") {
            oracle.kind = OracleSpec::Kind::BurgersTan;
            oracle.a1 = get("a_1");
            oracle.nu = get("nu");
        } else if (oracle_name == "sech") {
            oracle.kind = OracleSpec::Kind::KdvSech;
            oracle.c = get("c");
            oracle.k = get("k");
        } else {
            die("unknown oracle '" + oracle_name + "' (tan or sech)");
        }
    }

    const bool exact = precision == "exact";
    std::ostringstream os;
    for (std::size_t i = 0; i < axes.size(); ++i) os << (i ? "," : "") << axes[i].var;
    os << ",series";
    if (with_oracle) os << ",oracle,abserr";
    os << "\n";
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        std::vector<Rational> point;
        std::vector<double> fpoint;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            point.push_back(axes[i].points[idx[i]]);
            fpoint.push_back(point.back().get_d());
        }
        Rational exact_value;
        double value;
        if (exact) {
            exact_value = eval_exact(series, point);
            value = exact_value.get_d();
        } else {
            value = eval_float(series, fpoint);
        }
        for (std::size_t i = 0; i < axes.size(); ++i)
            os << (i ? "," : "") << format_double(fpoint[i]);
        os << "," << (exact ? to_string(exact_value) : format_double(value));
        if (with_oracle) {
            double ov = oracle_value(oracle, fpoint[0]);
            os << "," << format_double(ov) << "," << format_double(std::abs(value - ov));
        }
        os << "\n";
        std::size_t d = axes.size();
        while (d > 0) {
            if (++idx[d - 1] < axes[d - 1].points.size()) break;
            idx[d - 1] = 0;
            --d;
        }
        if (d == 0) break;
    }
    write_output(args.out_path, os.str());
    return 0;
}

int cmd_list(const std::string& out_path) {
    std::ostringstream os;
    for (const auto& name : builtin_names()) {
        ProblemSpec p = builtin(name);
        os << name << ": " << p.unknowns.size()
           << (p.unknowns.size() == 1 ? " unknown, " : " unknowns, ") << p.equations.size()
           << (p.equations.size() == 1 ? " equation" : " equations")
           << (p.reduction ? ", traveling-wave reduced" : "") << "\n";
    }
    write_output(out_path, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power-series solver for nonlinear PDEs"};
    app.require_subcommand(1);

    ProblemArgs solve_args, verify_args, residual_args, export_args, eval_args;
    std::string candidate_path, oracle_name, func_arg, precision = "float", list_out;
    std::vector<std::string> var_args;

    CLI::App* solve = app.add_subcommand("solve", "solve the matched algebraic system");
    add_problem_flags(solve, solve_args);

    CLI::App* verify = app.add_subcommand("verify", "check a candidate coefficient table");
    add_problem_flags(verify, verify_args);
    verify->add_option("--candidate", candidate_path, "candidate JSON file")->required();

    CLI::App* resid = app.add_subcommand("residual", "solve and report per-monomial residuals");
    add_problem_flags(resid, residual_args);

    CLI::App* exp = app.add_subcommand("export-system", "emit the matched equations as JSON");
    add_problem_flags(exp, export_args);

    CLI::App* eval = app.add_subcommand("eval", "evaluate the solved series on a grid (CSV)");
    add_problem_flags(eval, eval_args);
    eval->add_option("--var", var_args, "grid per variable: name=start:stop:step");
    eval->add_option("--oracle", oracle_name, "closed-form comparison column: tan or sech");
    eval->add_option("--func", func_arg, "which unknown to evaluate (default: first)");
    eval->add_option("--precision", precision, "float or exact")
        ->check(CLI::IsMember({"float", "exact"}));

    CLI::App* list = app.add_subcommand("list", "list built-in problems");
    list->add_option("--out", list_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve_args);
        if (verify->parsed()) return cmd_verify(verify_args, candidate_path);
        if (resid->parsed()) return cmd_residual(residual_args);
        if (exp->parsed()) return cmd_export(export_args);
        if (eval->parsed())
            return cmd_eval(eval_args, var_args, oracle_name, func_arg, precision);
        if (list->parsed()) return cmd_list(list_out);
    } catch (const Error& e) {
        die(e.what());
    } catch (const std::exception& e) {
        die(e.what());
    }
    return 1;
}
