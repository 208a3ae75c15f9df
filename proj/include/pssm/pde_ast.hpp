#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pssm/rational.hpp"
#include "pssm/symbol.hpp"

namespace pssm {

struct PdeExpr;
using PdeExprPtr = std::shared_ptr<const PdeExpr>;

// PDE expression AST. Deriv applies only to subtrees containing a FuncRef.
struct PdeExpr {
    enum class Kind { Const, Param, FuncRef, Deriv, Sum, Product, Power, Negate };

    Kind kind;
    Rational value;                    // Const
    Symbol param_sym;                  // Param
    std::string func;                  // FuncRef
    std::vector<PdeExprPtr> children;  // Deriv/Negate/Power: 1; Sum/Product: >= 2
    std::string deriv_var;             // Deriv
    unsigned deriv_order = 0;          // Deriv
    unsigned power_exp = 0;            // Power

    static PdeExprPtr constant(Rational v);
    static PdeExprPtr param(Symbol s);
    static PdeExprPtr func_ref(std::string name);
    static PdeExprPtr deriv(PdeExprPtr child, std::string var, unsigned order);
    static PdeExprPtr sum(std::vector<PdeExprPtr> children);
    static PdeExprPtr product(std::vector<PdeExprPtr> children);
    static PdeExprPtr power(PdeExprPtr child, unsigned exp);
    static PdeExprPtr negate(PdeExprPtr child);

    bool contains_func_ref() const;
};

bool structurally_equal(const PdeExpr& a, const PdeExpr& b);

// DSL-form text; parseable back to a structurally equal tree.
std::string to_text(const PdeExpr& e, const SymbolTable& table);

}  // namespace pssm
