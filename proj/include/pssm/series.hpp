#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pssm/rational_function.hpp"

namespace pssm {

// Ordered list of independent-variable names; disjoint from the symbol
// universe of params and coefficients.
struct VarSet {
    std::vector<std::string> names;
    std::size_t size() const { return names.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }
    friend bool operator==(const VarSet&, const VarSet&) = default;
};

// Exponent vector over a VarSet.
using ExpVec = std::vector<unsigned>;

inline unsigned total_degree(const ExpVec& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

// Graded-lex: total degree first, then lexicographic, smaller entry first.
struct GradedLexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        const unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

enum class Parity { Even, Odd, Any };

// Which exponent vectors a series may carry. Explicit sets are the escape
// hatch for irregular supports; parity composes with a total-degree bound.
class SupportPolicy {
public:
    enum class Kind { TotalDegree, Explicit, Parity };

    static SupportPolicy total_degree(unsigned max_deg);
    static SupportPolicy explicit_set(std::set<ExpVec, GradedLexLess> exponents);
    static SupportPolicy parity(std::vector<Parity> per_var, std::optional<unsigned> max_deg);

    Kind kind() const { return kind_; }
    bool bounded() const { return kind_ != Kind::Parity || max_degree_.has_value(); }
    bool admits(const ExpVec& e) const;
    // All admitted exponent vectors, graded-lex order. UnboundedSupport if infinite.
    std::vector<ExpVec> enumerate(std::size_t nvars) const;
    unsigned max_total_degree(std::size_t nvars) const;

    const std::vector<Parity>& parities() const { return parity_; }
    std::optional<unsigned> degree_bound() const { return max_degree_; }

    static SupportPolicy union_of(const SupportPolicy& a, const SupportPolicy& b, std::size_t nvars);
    SupportPolicy after_derivative(std::size_t var_index, unsigned order, std::size_t nvars) const;

private:
    Kind kind_ = Kind::TotalDegree;
    std::optional<unsigned> max_degree_;
    std::set<ExpVec, GradedLexLess> explicit_;
    std::vector<Parity> parity_;
};

// Truncated multivariate formal power series with RationalFunction
// coefficients. Stored coefficients are nonzero and admitted by the support.
class TruncSeries {
public:
    TruncSeries(VarSet vars, SupportPolicy support)
        : vars_(std::move(vars)), support_(std::move(support)) {}

    const VarSet& vars() const { return vars_; }
    const SupportPolicy& support() const { return support_; }
    const std::map<ExpVec, RationalFunction, GradedLexLess>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    unsigned max_stored_degree() const;

    void set_coefficient(const ExpVec& e, RationalFunction value);

    std::string to_text() const;

private:
    VarSet vars_;
    SupportPolicy support_;
    std::map<ExpVec, RationalFunction, GradedLexLess> coeffs_;
};

// Naming rule for fresh ansatz coefficients.
using SeedNamer = std::function<std::string(const std::string& fn_name, const ExpVec&)>;

// Default: F at (e1,...,ed) -> F_e1_..._ed.
SeedNamer default_namer();
// Table-style names: prefix + "_" + concatenated digits (a_00, a_14, b_3).
SeedNamer prefix_namer(std::string prefix);

// Creates the generic series: one fresh symbol per admitted exponent vector.
// With allow_existing, previously interned coefficient names are reused, so
// expanding the same problem twice yields the same series.
TruncSeries ansatz(const std::string& fn_name, const VarSet& vars, const SupportPolicy& support,
                   const SeedNamer& namer, const SymbolTablePtr& table,
                   bool allow_existing = false);

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_scale(const TruncSeries& a, const RationalFunction& factor);
// Truncated Cauchy product: exact on all monomials of total degree <= out_bound.
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b, unsigned out_bound);
TruncSeries series_diff(const TruncSeries& s, const std::string& var, unsigned order);
TruncSeries series_const(const VarSet& vars, const RationalFunction& value);
RationalFunction coefficient(const TruncSeries& s, const ExpVec& exponents);

}  // namespace pssm
