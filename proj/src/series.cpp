#include "pssm/series.hpp"

#include <algorithm>
#include <sstream>

namespace pssm {

SupportPolicy SupportPolicy::total_degree(unsigned max_deg) {
    SupportPolicy p;
    p.kind_ = Kind::TotalDegree;
    p.max_degree_ = max_deg;
    return p;
}

SupportPolicy SupportPolicy::explicit_set(std::set<ExpVec, GradedLexLess> exponents) {
    SupportPolicy p;
    p.kind_ = Kind::Explicit;
    p.explicit_ = std::move(exponents);
    return p;
}

SupportPolicy SupportPolicy::parity(std::vector<Parity> per_var, std::optional<unsigned> max_deg) {
    SupportPolicy p;
    p.kind_ = Kind::Parity;
    p.parity_ = std::move(per_var);
    p.max_degree_ = max_deg;
    return p;
}

bool SupportPolicy::admits(const ExpVec& e) const {
    switch (kind_) {
        case Kind::TotalDegree:
            return pssm::total_degree(e) <= *max_degree_;
        case Kind::Explicit:
            return explicit_.count(e) != 0;
        case Kind::Parity: {
            if (max_degree_ && pssm::total_degree(e) > *max_degree_) return false;
            for (std::size_t i = 0; i < e.size(); ++i) {
                Parity want = i < parity_.size() ? parity_[i] : Parity::Any;
                if (want == Parity::Even && e[i] % 2 != 0) return false;
                if (want == Parity::Odd && e[i] % 2 != 1) return false;
            }
            return true;
        }
    }
    return false;
}

namespace {

void enumerate_rec(std::size_t nvars, unsigned budget, ExpVec& cur, std::size_t i,
                   std::vector<ExpVec>& out) {
    if (i == nvars) {
        out.push_back(cur);
        return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
        cur[i] = e;
        enumerate_rec(nvars, budget - e, cur, i + 1, out);
    }
    cur[i] = 0;
}

}  // namespace

std::vector<ExpVec> SupportPolicy::enumerate(std::size_t nvars) const {
    if (!bounded()) throw UnboundedSupport("support admits an infinite set of exponent vectors");
    std::vector<ExpVec> out;
    if (kind_ == Kind::Explicit) {
        for (const auto& e : explicit_) {
            if (e.size() != nvars) throw Error("explicit support arity mismatch");
            out.push_back(e);
        }
        return out;
    }
    ExpVec cur(nvars, 0);
    std::vector<ExpVec> all;
    enumerate_rec(nvars, *max_degree_, cur, 0, all);
    std::sort(all.begin(), all.end(), GradedLexLess{});
    for (const auto& e : all)
        if (admits(e)) out.push_back(e);
    return out;
}

unsigned SupportPolicy::max_total_degree(std::size_t) const {
    if (kind_ == Kind::Explicit) {
        unsigned d = 0;
        for (const auto& e : explicit_) d = std::max(d, pssm::total_degree(e));
        return d;
    }
    if (!bounded()) throw UnboundedSupport("support admits an infinite set of exponent vectors");
    return *max_degree_;
}

SupportPolicy SupportPolicy::union_of(const SupportPolicy& a, const SupportPolicy& b,
                                      std::size_t nvars) {
    if (a.kind_ == Kind::TotalDegree && b.kind_ == Kind::TotalDegree)
        return total_degree(std::max(*a.max_degree_, *b.max_degree_));
    if (a.kind_ == Kind::Parity && b.kind_ == Kind::Parity && a.parity_ == b.parity_ &&
        a.bounded() && b.bounded())
        return parity(a.parity_, std::max(*a.max_degree_, *b.max_degree_));
    std::set<ExpVec, GradedLexLess> u;
    for (auto& e : a.enumerate(nvars)) u.insert(e);
    for (auto& e : b.enumerate(nvars)) u.insert(e);
    return explicit_set(std::move(u));
}

SupportPolicy SupportPolicy::after_derivative(std::size_t var_index, unsigned order,
                                              std::size_t) const {
    switch (kind_) {
        case Kind::TotalDegree:
            return total_degree(*max_degree_ >= order ? *max_degree_ - order : 0);
        case Kind::Parity: {
            std::vector<Parity> p = parity_;
            if (var_index < p.size() && p[var_index] != Parity::Any && order % 2 == 1)
                p[var_index] = p[var_index] == Parity::Even ? Parity::Odd : Parity::Even;
            std::optional<unsigned> bound;
            if (max_degree_) bound = *max_degree_ >= order ? *max_degree_ - order : 0;
            return parity(std::move(p), bound);
        }
        case Kind::Explicit: {
            std::set<ExpVec, GradedLexLess> img;
            for (const auto& e : explicit_) {
                if (e[var_index] < order) continue;
                ExpVec d = e;
                d[var_index] -= order;
                img.insert(std::move(d));
            }
            return explicit_set(std::move(img));
        }
    }
    throw Error("unreachable");
}

unsigned TruncSeries::max_stored_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : coeffs_) d = std::max(d, total_degree(e));
    return d;
}

void TruncSeries::set_coefficient(const ExpVec& e, RationalFunction value) {
    if (e.size() != vars_.size()) throw VarMismatch("exponent vector arity mismatch");
    if (!support_.admits(e)) throw Error("exponent vector not admitted by support policy");
    if (value.is_zero())
        coeffs_.erase(e);
    else
        coeffs_.insert_or_assign(e, std::move(value));
}

std::string TruncSeries::to_text() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        const std::string ct = c.to_text();
        const bool needs_parens = ct.find(' ') != std::string::npos && ct.front() != '(';
        os << (needs_parens ? "(" + ct + ")" : ct);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << vars_.names[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

SeedNamer default_namer() {
    return [](const std::string& fn, const ExpVec& e) {
        std::string name = fn;
        for (unsigned x : e) name += "_" + std::to_string(x);
        return name;
    };
}

SeedNamer prefix_namer(std::string prefix) {
    return [prefix = std::move(prefix)](const std::string&, const ExpVec& e) {
        std::string name = prefix + "_";
        for (unsigned x : e) name += std::to_string(x);
        return name;
    };
}

TruncSeries ansatz(const std::string& fn_name, const VarSet& vars, const SupportPolicy& support,
                   const SeedNamer& namer, const SymbolTablePtr& table, bool allow_existing) {
    TruncSeries s(vars, support);
    for (const auto& e : support.enumerate(vars.size())) {
        const std::string name = namer(fn_name, e);
        if (table->contains(name) && !allow_existing)
            throw Error("coefficient symbol '" + name + "' already in use");
        s.set_coefficient(e, RationalFunction::from_symbol(table->intern(name), table));
    }
    return s;
}

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
    if (!(a.vars() == b.vars())) throw VarMismatch("series over different variable sets");
    TruncSeries out(a.vars(), SupportPolicy::union_of(a.support(), b.support(), a.vars().size()));
    for (const auto& [e, c] : a.coeffs()) out.set_coefficient(e, c);
    for (const auto& [e, c] : b.coeffs()) {
        auto it = a.coeffs().find(e);
        out.set_coefficient(e, it == a.coeffs().end() ? c : it->second + c);
    }
    return out;
}

TruncSeries series_scale(const TruncSeries& a, const RationalFunction& factor) {
    TruncSeries out(a.vars(), a.support());
    if (factor.is_zero()) return out;
    for (const auto& [e, c] : a.coeffs()) out.set_coefficient(e, c * factor);
    return out;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b, unsigned out_bound) {
    if (!(a.vars() == b.vars())) throw VarMismatch("series over different variable sets");
    TruncSeries out(a.vars(), SupportPolicy::total_degree(out_bound));
    std::map<ExpVec, RationalFunction, GradedLexLess> acc;
    for (const auto& [ea, ca] : a.coeffs()) {
        const unsigned da = total_degree(ea);
        if (da > out_bound) continue;
        for (const auto& [eb, cb] : b.coeffs()) {
            if (da + total_degree(eb) > out_bound) continue;
            ExpVec e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto [it, inserted] = acc.try_emplace(e, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    for (auto& [e, c] : acc) out.set_coefficient(e, std::move(c));
    return out;
}

TruncSeries series_diff(const TruncSeries& s, const std::string& var, unsigned order) {
    auto vi = s.vars().index_of(var);
    if (!vi) throw VarMismatch("unknown variable '" + var + "'");
    TruncSeries out(s.vars(), s.support().after_derivative(*vi, order, s.vars().size()));
    for (const auto& [e, c] : s.coeffs()) {
        if (e[*vi] < order) continue;
        Rational falling(1);
        for (unsigned j = 0; j < order; ++j) falling *= Rational(e[*vi] - j);
        ExpVec d = e;
        d[*vi] -= order;
        out.set_coefficient(d, c * RationalFunction::from(falling));
    }
    return out;
}

TruncSeries series_const(const VarSet& vars, const RationalFunction& value) {
    TruncSeries out(vars, SupportPolicy::total_degree(0));
    if (!value.is_zero()) out.set_coefficient(ExpVec(vars.size(), 0), value);
    return out;
}

RationalFunction coefficient(const TruncSeries& s, const ExpVec& exponents) {
    auto it = s.coeffs().find(exponents);
    return it == s.coeffs().end() ? RationalFunction() : it->second;
}

}  // namespace pssm
