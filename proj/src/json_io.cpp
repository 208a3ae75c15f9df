#include "pssm/json_io.hpp"

#include <json.hpp>

#include "pssm/text.hpp"

namespace pssm {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json monomial_json(const ExpVec& e) {
    ordered_json a = ordered_json::array();
    for (unsigned x : e) a.push_back(x);
    return a;
}

ordered_json equation_json(const AlgEquation& eq) {
    ordered_json o;
    o["equation"] = eq.equation_index;
    o["monomial"] = monomial_json(eq.monomial);
    o["poly"] = eq.poly.to_text();
    return o;
}

ordered_json result_json(const SolveResult& r) {
    ordered_json o;
    ordered_json assignments = ordered_json::array();
    for (const auto& [s, v] : r.assignments) {
        ordered_json a;
        a["symbol"] = r.table->name(s);
        a["value_text"] = v.to_text();
        assignments.push_back(std::move(a));
    }
    o["assignments"] = std::move(assignments);
    ordered_json assumptions = ordered_json::array();
    for (const auto& a : r.assumptions) assumptions.push_back(a.to_text());
    o["assumptions"] = std::move(assumptions);
    ordered_json unresolved = ordered_json::array();
    for (const auto& eq : r.unresolved) unresolved.push_back(equation_json(eq));
    o["unresolved"] = std::move(unresolved);
    ordered_json branches = ordered_json::array();
    for (const auto& b : r.branches) branches.push_back(result_json(b));
    o["branches"] = std::move(branches);
    return o;
}

}  // namespace

std::string solve_result_to_json(const SolveResult& r, const std::string& problem_name) {
    ordered_json o;
    o["schema"] = 1;
    o["problem"] = problem_name;
    ordered_json seeds = ordered_json::array();
    for (Symbol s : r.seeds) seeds.push_back(r.table->name(s));
    o["seeds"] = std::move(seeds);
    ordered_json body = result_json(r);
    o.update(body);
    return o.dump(2) + "\n";
}

std::string residual_report_to_json(const ResidualReport& rep, const std::string& problem_name) {
    ordered_json o;
    o["schema"] = 1;
    o["problem"] = problem_name;
    o["all_zero"] = rep.all_zero();
    o["max_checked_degree"] = rep.max_checked_degree;
    ordered_json entries = ordered_json::array();
    for (const auto& e : rep.entries) {
        ordered_json j;
        j["equation"] = e.equation_index;
        j["monomial"] = monomial_json(e.monomial);
        j["zero"] = e.zero;
        if (!e.zero) j["residual"] = e.residual_text;
        entries.push_back(std::move(j));
    }
    o["entries"] = std::move(entries);
    return o.dump(2) + "\n";
}

std::string system_to_json(const Expansion& ex) {
    ordered_json o;
    o["schema"] = 1;
    o["problem"] = ex.problem.name;
    ordered_json eqs = ordered_json::array();
    for (const auto& eq : ex.system.equations) eqs.push_back(equation_json(eq));
    o["equations"] = std::move(eqs);
    ordered_json unknowns = ordered_json::array();
    for (Symbol s : ex.system.unknowns) unknowns.push_back(ex.system.table->name(s));
    o["unknowns"] = std::move(unknowns);
    ordered_json knowns = ordered_json::array();
    for (Symbol s : ex.system.seeds) knowns.push_back(ex.system.table->name(s));
    for (Symbol s : ex.system.params) knowns.push_back(ex.system.table->name(s));
    o["knowns"] = std::move(knowns);
    return o.dump(2) + "\n";
}

std::string classify_to_json(const ClassifyReport& rep, const std::string& problem_name) {
    ordered_json o;
    o["schema"] = 1;
    o["problem"] = problem_name;
    o["equations"] = rep.equations;
    o["unknowns"] = rep.unknowns;
    o["seeds"] = rep.seeds;
    o["params"] = rep.params;
    o["underdetermined"] = rep.underdetermined;
    o["overdetermined"] = rep.overdetermined;
    o["trivially_determined"] = rep.trivially_determined;
    return o.dump(2) + "\n";
}

std::map<Symbol, RationalFunction> parse_candidate_json(const std::string& text,
                                                        const SymbolTablePtr& table) {
    ordered_json o;
    try {
        o = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad candidate JSON: ") + e.what());
    }
    if (!o.is_object() || !o.contains("assignments"))
        throw SchemaError("candidate JSON must contain 'assignments'");
    std::map<Symbol, RationalFunction> out;
    auto add = [&](const std::string& name, const ordered_json& value) {
        auto s = table->find(name);
        if (!s) throw SchemaError("candidate names unknown symbol '" + name + "'");
        if (!value.is_string()) throw SchemaError("candidate value for '" + name + "' must be a string");
        try {
            out.insert_or_assign(*s, parse_ratfunc(value.get<std::string>(), table, false));
        } catch (const DivisionByZero& e) {
            throw DegenerateSubstitution("candidate value for '" + name + "': " + e.what());
        }
    };
    const ordered_json& a = o["assignments"];
    if (a.is_object()) {
        for (const auto& [name, value] : a.items()) add(name, value);
    } else if (a.is_array()) {
        // The shape solve emits: [{"symbol": ..., "value_text": ...}].
        for (const auto& entry : a) {
            if (!entry.is_object() || !entry.contains("symbol") || !entry.contains("value_text"))
                throw SchemaError("assignment entries need 'symbol' and 'value_text'");
            add(entry["symbol"].get<std::string>(), entry["value_text"]);
        }
    } else {
        throw SchemaError("'assignments' must be an object or an array");
    }
    return out;
}

}  // namespace pssm
