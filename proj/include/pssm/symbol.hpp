#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pssm/error.hpp"

namespace pssm {

// Index into a SymbolTable. Ordering is creation order, which is also the
// tie-break order of the graded-lex term order.
struct Symbol {
    std::uint32_t id = 0;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// Per-problem symbol universe. Interning order is significant: it fixes the
// canonical term order and must be reproducible, so parsers create params
// before ansatz coefficients.
class SymbolTable {
public:
    Symbol intern(std::string_view name) {
        if (auto it = index_.find(name); it != index_.end()) return Symbol{it->second};
        if (frozen_) throw Error("symbol universe is frozen; cannot add '" + std::string(name) + "'");
        validate_name(name);
        const auto id = static_cast<std::uint32_t>(names_.size());
        names_.emplace_back(name);
        index_.emplace(names_.back(), id);
        return Symbol{id};
    }

    std::optional<Symbol> find(std::string_view name) const {
        if (auto it = index_.find(name); it != index_.end()) return Symbol{it->second};
        return std::nullopt;
    }

    Symbol lookup(std::string_view name) const {
        if (auto s = find(name)) return *s;
        throw Error("unknown symbol '" + std::string(name) + "'");
    }

    const std::string& name(Symbol s) const { return names_.at(s.id); }
    std::size_t size() const { return names_.size(); }
    bool contains(std::string_view name) const { return index_.count(name) != 0; }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    static void validate_name(std::string_view name) {
        auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
        auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; };
        bool ok = !name.empty() && alpha(name.front());
        for (std::size_t i = 1; ok && i < name.size(); ++i) ok = alnum(name[i]);
        if (!ok) throw Error("invalid symbol name '" + std::string(name) + "'");
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::uint32_t, std::less<>> index_;
    bool frozen_ = false;
};

using SymbolTablePtr = std::shared_ptr<SymbolTable>;

}  // namespace pssm
