#include "pssm/pde_ast.hpp"

#include <sstream>

namespace pssm {

namespace {
PdeExprPtr make(PdeExpr e) { return std::make_shared<PdeExpr>(std::move(e)); }
}  // namespace

PdeExprPtr PdeExpr::constant(Rational v) {
    PdeExpr e;
    e.kind = Kind::Const;
    e.value = std::move(v);
    return make(std::move(e));
}

PdeExprPtr PdeExpr::param(Symbol s) {
    PdeExpr e;
    e.kind = Kind::Param;
    e.param_sym = s;
    return make(std::move(e));
}

PdeExprPtr PdeExpr::func_ref(std::string name) {
    PdeExpr e;
    e.kind = Kind::FuncRef;
    e.func = std::move(name);
    return make(std::move(e));
}

PdeExprPtr PdeExpr::deriv(PdeExprPtr child, std::string var, unsigned order) {
    if (order == 0) throw Error("derivative order must be positive");
    if (!child->contains_func_ref()) throw Error("derivative of a non-function subtree");
    // dx(dx(U)) and dx applied at order 2 are the same tree.
    if (child->kind == Kind::Deriv && child->deriv_var == var) {
        order += child->deriv_order;
        child = child->children[0];
    }
    PdeExpr e;
    e.kind = Kind::Deriv;
    e.deriv_var = std::move(var);
    e.deriv_order = order;
    e.children.push_back(std::move(child));
    return make(std::move(e));
}

PdeExprPtr PdeExpr::sum(std::vector<PdeExprPtr> children) {
    if (children.size() == 1) return children.front();
    PdeExpr e;
    e.kind = Kind::Sum;
    e.children = std::move(children);
    return make(std::move(e));
}

PdeExprPtr PdeExpr::product(std::vector<PdeExprPtr> children) {
    if (children.size() == 1) return children.front();
    PdeExpr e;
    e.kind = Kind::Product;
    e.children = std::move(children);
    return make(std::move(e));
}

PdeExprPtr PdeExpr::power(PdeExprPtr child, unsigned exp) {
    if (exp == 0) throw Error("power exponent must be >= 1");
    if (exp == 1) return child;
    PdeExpr e;
    e.kind = Kind::Power;
    e.power_exp = exp;
    e.children.push_back(std::move(child));
    return make(std::move(e));
}

PdeExprPtr PdeExpr::negate(PdeExprPtr child) {
    PdeExpr e;
    e.kind = Kind::Negate;
    e.children.push_back(std::move(child));
    return make(std::move(e));
}

bool PdeExpr::contains_func_ref() const {
    if (kind == Kind::FuncRef) return true;
    for (const auto& c : children)
        if (c->contains_func_ref()) return true;
    return false;
}

bool structurally_equal(const PdeExpr& a, const PdeExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case PdeExpr::Kind::Const:
            if (a.value != b.value) return false;
            break;
        case PdeExpr::Kind::Param:
            if (!(a.param_sym == b.param_sym)) return false;
            break;
        case PdeExpr::Kind::FuncRef:
            if (a.func != b.func) return false;
            break;
        case PdeExpr::Kind::Deriv:
            if (a.deriv_var != b.deriv_var || a.deriv_order != b.deriv_order) return false;
            break;
        case PdeExpr::Kind::Power:
            if (a.power_exp != b.power_exp) return false;
            break;
        default:
            break;
    }
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(*a.children[i], *b.children[i])) return false;
    return true;
}

namespace {

// Printing precedence: Sum < Product < Negate/Power atom.
void print(const PdeExpr& e, const SymbolTable& table, std::ostream& os, int parent_prec) {
    auto parens = [&](int prec, auto&& body) {
        if (prec < parent_prec) os << "(";
        body();
        if (prec < parent_prec) os << ")";
    };
    switch (e.kind) {
        case PdeExpr::Kind::Const: {
            const Rational& v = e.value;
            if (is_integer(v)) {
                os << to_string(v);
            } else {
                parens(1, [&] { os << v.get_num().get_str() << "/" << v.get_den().get_str(); });
            }
            break;
        }
        case PdeExpr::Kind::Param:
            os << table.name(e.param_sym);
            break;
        case PdeExpr::Kind::FuncRef:
            os << e.func;
            break;
        case PdeExpr::Kind::Deriv: {
            // Nested single-order applications: d^3/dz^3 prints as dz(dz(dz(.))).
            for (unsigned i = 0; i < e.deriv_order; ++i) os << "d" << e.deriv_var << "(";
            print(*e.children[0], table, os, 0);
            for (unsigned i = 0; i < e.deriv_order; ++i) os << ")";
            break;
        }
        case PdeExpr::Kind::Sum:
            parens(0, [&] {
                for (std::size_t i = 0; i < e.children.size(); ++i) {
                    const PdeExpr& c = *e.children[i];
                    if (i > 0) {
                        if (c.kind == PdeExpr::Kind::Negate) {
                            os << " - ";
                            print(*c.children[0], table, os, 1);
                            continue;
                        }
                        os << " + ";
                    }
                    print(c, table, os, i == 0 ? 0 : 1);
                }
            });
            break;
        case PdeExpr::Kind::Product:
            parens(1, [&] {
                for (std::size_t i = 0; i < e.children.size(); ++i) {
                    if (i > 0) os << "*";
                    print(*e.children[i], table, os, 2);
                }
            });
            break;
        case PdeExpr::Kind::Power:
            parens(2, [&] {
                print(*e.children[0], table, os, 3);
                os << "^" << e.power_exp;
            });
            break;
        case PdeExpr::Kind::Negate:
            parens(1, [&] {
                os << "-";
                print(*e.children[0], table, os, 2);
            });
            break;
    }
}

}  // namespace

std::string to_text(const PdeExpr& e, const SymbolTable& table) {
    std::ostringstream os;
    print(e, table, os, 0);
    return os.str();
}

}  // namespace pssm
