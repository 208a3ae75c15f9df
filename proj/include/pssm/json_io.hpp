#pragma once

#include <string>

#include "pssm/oracles.hpp"
#include "pssm/verify.hpp"

namespace pssm {

// JSON payloads use the canonical rational-function text grammar and are
// deterministic: object keys are emitted in a fixed order.

std::string solve_result_to_json(const SolveResult& r, const std::string& problem_name);

std::string residual_report_to_json(const ResidualReport& rep, const std::string& problem_name);

std::string system_to_json(const Expansion& ex);

std::string classify_to_json(const ClassifyReport& rep, const std::string& problem_name);

// Candidate files map coefficient names to canonical value text:
//   {"schema": 1, "assignments": {"a_11": "(a_10^2)/(3*nu)", ...}}
// Unknown names must exist in the problem's universe.
std::map<Symbol, RationalFunction> parse_candidate_json(const std::string& text,
                                                        const SymbolTablePtr& table);

}  // namespace pssm
