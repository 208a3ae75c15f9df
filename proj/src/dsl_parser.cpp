#include <cctype>
#include <sstream>

#include "pssm/problem.hpp"

namespace pssm {

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    bool at_line_start_keyword() const { return tok_.col == 1; }

private:
    void advance() {
        skip_ws_and_comments();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                step();
            tok_.kind = Token::Kind::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) step();
            tok_.kind = Token::Kind::Int;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        tok_.kind = Token::Kind::Punct;
        tok_.text = std::string(1, c);
        step();
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') step();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                step();
            } else {
                break;
            }
        }
    }

    void step() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
    Token tok_;
};

bool is_keyword(const std::string& s) {
    return s == "problem" || s == "vars" || s == "params" || s == "unknown" || s == "eq" ||
           s == "ansatz" || s == "seeds" || s == "match" || s == "reduce";
}

class ProblemParser {
public:
    explicit ProblemParser(const std::string& text) : lex_(text) {
        spec_.table = std::make_shared<SymbolTable>();
    }

    ProblemSpec parse() {
        Token kw = expect(Token::Kind::Ident);
        if (kw.text != "problem") fail(kw, "file must start with a problem statement");
        // Problem names may contain dashes: burgers-stationary.
        spec_.name = expect(Token::Kind::Ident).text;
        while (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "-") {
            lex_.next();
            Token part = lex_.next();
            if (part.kind != Token::Kind::Ident && part.kind != Token::Kind::Int)
                fail(part, "bad problem name");
            spec_.name += "-" + part.text;
        }
        while (lex_.peek().kind != Token::Kind::End) {
            Token t = lex_.peek();
            if (t.kind != Token::Kind::Ident || !is_keyword(t.text))
                fail(t, "expected a statement keyword");
            if (t.text == "vars") {
                lex_.next();
                parse_vars();
            } else if (t.text == "params") {
                lex_.next();
                parse_params();
            } else if (t.text == "unknown") {
                lex_.next();
                parse_unknown();
            } else if (t.text == "eq") {
                lex_.next();
                parse_eq();
            } else if (t.text == "ansatz") {
                lex_.next();
                parse_ansatz();
            } else if (t.text == "seeds") {
                lex_.next();
                parse_seeds();
            } else if (t.text == "match") {
                lex_.next();
                parse_match();
            } else if (t.text == "reduce") {
                lex_.next();
                parse_reduce();
            } else {
                fail(t, "unexpected statement '" + t.text + "'");
            }
        }
        validate();
        return std::move(spec_);
    }

private:
    void parse_vars() {
        while (lex_.peek().kind == Token::Kind::Ident && !is_keyword(lex_.peek().text))
            spec_.vars.names.push_back(lex_.next().text);
        if (spec_.vars.names.empty()) fail(lex_.peek(), "vars statement needs at least one name");
    }

    void parse_params() {
        while (lex_.peek().kind == Token::Kind::Ident && !is_keyword(lex_.peek().text)) {
            Token t = lex_.next();
            if (spec_.vars.index_of(t.text)) fail(t, "'" + t.text + "' is already a variable");
            spec_.params.push_back(spec_.table->intern(t.text));
        }
    }

    void parse_unknown() {
        Token fn = expect(Token::Kind::Ident);
        expect_punct("(");
        std::vector<std::string> args;
        while (true) {
            args.push_back(expect(Token::Kind::Ident).text);
            if (!accept_punct(",")) break;
        }
        expect_punct(")");
        for (const auto& a : args)
            if (!spec_.vars.index_of(a)) fail(fn, "unknown variable '" + a + "' in unknown declaration");
        if (args != spec_.vars.names)
            fail(fn, "unknown functions must take the declared variables in order");
        if (spec_.is_unknown(fn.text)) fail(fn, "duplicate unknown '" + fn.text + "'");
        spec_.unknowns.push_back(AnsatzDecl{fn.text, SupportPolicy::total_degree(0), ""});
        has_support_.push_back(false);
    }

    void parse_eq() {
        PdeExprPtr lhs = parse_expr();
        expect_punct("=");
        PdeExprPtr rhs = parse_expr();
        if (rhs->kind == PdeExpr::Kind::Const && sgn(rhs->value) == 0) {
            spec_.equations.push_back(lhs);
        } else {
            spec_.equations.push_back(PdeExpr::sum({lhs, PdeExpr::negate(rhs)}));
        }
    }

    void parse_ansatz() {
        Token fn = expect(Token::Kind::Ident);
        std::size_t idx = unknown_index(fn);
        expect_punct(":");
        spec_.unknowns[idx].support = parse_support();
        has_support_[idx] = true;
        if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "names") {
            lex_.next();
            spec_.unknowns[idx].names_prefix = expect(Token::Kind::Ident).text;
        }
    }

    SupportPolicy parse_support() {
        Token t = expect(Token::Kind::Ident);
        if (t.text == "total_degree") {
            return SupportPolicy::total_degree(expect_int());
        }
        if (t.text == "explicit") {
            std::set<ExpVec, GradedLexLess> set;
            for (auto& e : parse_exponent_list()) set.insert(std::move(e));
            return SupportPolicy::explicit_set(std::move(set));
        }
        if (t.text == "parity") {
            Token p = expect(Token::Kind::Ident);
            Parity par;
            if (p.text == "even")
                par = Parity::Even;
            else if (p.text == "odd")
                par = Parity::Odd;
            else
                fail(p, "expected 'even' or 'odd'");
            std::optional<unsigned> bound;
            if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "total_degree") {
                lex_.next();
                bound = expect_int();
            }
            // Uniform parity across all declared variables.
            return SupportPolicy::parity(
                std::vector<Parity>(std::max<std::size_t>(spec_.vars.size(), 1), par), bound);
        }
        fail(t, "expected total_degree, explicit or parity");
    }

    std::vector<ExpVec> parse_exponent_list() {
        expect_punct("[");
        std::vector<ExpVec> out;
        while (true) {
            out.push_back(parse_exponents());
            if (!accept_punct(",")) break;
        }
        expect_punct("]");
        return out;
    }

    // (i, j) or a bare integer for one-variable problems.
    ExpVec parse_exponents() {
        ExpVec e;
        if (accept_punct("(")) {
            while (true) {
                e.push_back(expect_int());
                if (!accept_punct(",")) break;
            }
            expect_punct(")");
        } else {
            e.push_back(expect_int());
        }
        return e;
    }

    void parse_seeds() {
        while (lex_.peek().kind == Token::Kind::Ident && !is_keyword(lex_.peek().text)) {
            Token fn = lex_.next();
            unknown_index(fn);
            expect_punct("[");
            ExpVec e;
            while (true) {
                e.push_back(expect_int());
                if (!accept_punct(",")) break;
            }
            expect_punct("]");
            spec_.seeds.push_back(SeedDecl{fn.text, std::move(e)});
        }
    }

    void parse_match() {
        Token t = expect(Token::Kind::Ident);
        if (t.text == "total_degree") {
            spec_.match.kind = MatchSpec::Kind::TotalDegree;
            spec_.match.max_degree = expect_int();
        } else if (t.text == "explicit") {
            spec_.match.kind = MatchSpec::Kind::Explicit;
            spec_.match.monomials = parse_exponent_list();
        } else {
            fail(t, "expected total_degree or explicit");
        }
    }

    void parse_reduce() {
        WaveReduction r;
        r.new_var = expect(Token::Kind::Ident).text;
        expect_punct("=");
        r.k_param = expect(Token::Kind::Ident).text;
        expect_punct("*");
        r.space_var = expect(Token::Kind::Ident).text;
        expect_punct("-");
        r.lambda_param = expect(Token::Kind::Ident).text;
        expect_punct("*");
        r.time_var = expect(Token::Kind::Ident).text;
        Token w = expect(Token::Kind::Ident);
        if (w.text != "with") fail(w, "expected 'with'");
        r.speed_param = expect(Token::Kind::Ident).text;
        expect_punct("=");
        Token l2 = expect(Token::Kind::Ident);
        expect_punct("/");
        Token k2 = expect(Token::Kind::Ident);
        if (l2.text != r.lambda_param || k2.text != r.k_param)
            fail(l2, "speed definition must be " + r.lambda_param + "/" + r.k_param);
        // Intern the wave speed now so it precedes every ansatz coefficient
        // in the canonical symbol order.
        spec_.table->intern(r.speed_param);
        spec_.reduction = r;
    }

    // Expression grammar (see problem.hpp). '/' requires a constant divisor.
    PdeExprPtr parse_expr() {
        bool neg = accept_punct("-");
        PdeExprPtr acc = parse_term();
        if (neg) acc = PdeExpr::negate(acc);
        std::vector<PdeExprPtr> terms{acc};
        while (true) {
            if (accept_punct("+")) {
                terms.push_back(parse_term());
            } else if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "-") {
                lex_.next();
                terms.push_back(PdeExpr::negate(parse_term()));
            } else {
                break;
            }
        }
        return PdeExpr::sum(std::move(terms));
    }

    PdeExprPtr parse_term() {
        std::vector<PdeExprPtr> factors{parse_factor()};
        while (true) {
            if (accept_punct("*")) {
                factors.push_back(parse_factor());
            } else if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "/") {
                Token slash = lex_.next();
                PdeExprPtr d = parse_factor();
                if (d->kind != PdeExpr::Kind::Const || sgn(d->value) == 0)
                    fail(slash, "divisor must be a nonzero numeric constant");
                // Fold x/q into x * (1/q); constants merge directly.
                Rational inv = Rational(1) / d->value;
                if (factors.size() == 1 && factors[0]->kind == PdeExpr::Kind::Const) {
                    factors[0] = PdeExpr::constant(factors[0]->value * inv);
                } else {
                    factors.push_back(PdeExpr::constant(inv));
                }
            } else {
                break;
            }
        }
        return PdeExpr::product(std::move(factors));
    }

    PdeExprPtr parse_factor() {
        PdeExprPtr base = parse_atom();
        if (accept_punct("^")) {
            unsigned e = expect_int();
            Token t = lex_.peek();
            if (e == 0) fail(t, "power exponent must be >= 1");
            if (base->kind == PdeExpr::Kind::Const) {
                Rational v(1);
                for (unsigned i = 0; i < e; ++i) v *= base->value;
                return PdeExpr::constant(v);
            }
            return PdeExpr::power(base, e);
        }
        return base;
    }

    PdeExprPtr parse_atom() {
        Token t = lex_.next();
        if (t.kind == Token::Kind::Int) return PdeExpr::constant(rational_from_string(t.text));
        if (t.kind == Token::Kind::Punct && t.text == "(") {
            PdeExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (t.kind != Token::Kind::Ident) fail(t, "expected an expression atom");
        // d<var>( ... ) is the derivative form.
        if (t.text.size() > 1 && t.text[0] == 'd' && spec_.vars.index_of(t.text.substr(1)) &&
            lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
            lex_.next();
            PdeExprPtr inner = parse_expr();
            expect_punct(")");
            try {
                return PdeExpr::deriv(inner, t.text.substr(1), 1);
            } catch (const Error& e) {
                fail(t, e.what());
            }
        }
        if (spec_.is_unknown(t.text)) {
            if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(")
                fail(t, "function reference '" + t.text + "' takes no argument list in equations");
            return PdeExpr::func_ref(t.text);
        }
        if (auto s = spec_.table->find(t.text)) return PdeExpr::param(*s);
        if (spec_.vars.index_of(t.text))
            fail(t, "independent variable '" + t.text + "' cannot appear directly in an equation");
        throw UnknownFunction("parse error at " + std::to_string(t.line) + ":" +
                              std::to_string(t.col) + ": unknown identifier '" + t.text + "'");
    }

    void validate() {
        if (spec_.vars.names.empty()) fail(lex_.peek(), "missing vars statement");
        if (spec_.unknowns.empty()) fail(lex_.peek(), "missing unknown statement");
        if (spec_.equations.empty()) fail(lex_.peek(), "missing eq statement");
        for (std::size_t i = 0; i < spec_.unknowns.size(); ++i)
            if (!has_support_[i])
                throw Error("missing ansatz for unknown '" + spec_.unknowns[i].func + "'");
        const std::size_t arity = spec_.reduction ? 1 : spec_.vars.size();
        for (const auto& sd : spec_.seeds) {
            if (sd.exponents.size() != arity)
                throw Error("seed arity mismatch for '" + sd.func + "'");
            if (!spec_.unknown(sd.func).support.admits(sd.exponents))
                throw Error("seed of '" + sd.func + "' is outside the ansatz support");
        }
        if (spec_.reduction) {
            const auto& r = *spec_.reduction;
            if (!spec_.table->contains(r.k_param) || !spec_.table->contains(r.lambda_param))
                throw Error("reduce statement references undeclared params");
            if (!spec_.vars.index_of(r.space_var) || !spec_.vars.index_of(r.time_var) ||
                spec_.vars.size() != 2)
                throw NotReducible("reduce requires exactly the two declared variables");
        }
    }

    std::size_t unknown_index(const Token& fn) {
        for (std::size_t i = 0; i < spec_.unknowns.size(); ++i)
            if (spec_.unknowns[i].func == fn.text) return i;
        throw UnknownFunction("parse error at " + std::to_string(fn.line) + ":" +
                              std::to_string(fn.col) + ": unknown function '" + fn.text + "'");
    }

    Token expect(Token::Kind kind) {
        Token t = lex_.next();
        if (t.kind != kind) fail(t, "unexpected token '" + t.text + "'");
        return t;
    }

    void expect_punct(const std::string& p) {
        Token t = lex_.next();
        if (t.kind != Token::Kind::Punct || t.text != p) fail(t, "expected '" + p + "'");
    }

    bool accept_punct(const std::string& p) {
        if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p) {
            lex_.next();
            return true;
        }
        return false;
    }

    unsigned expect_int() {
        Token t = expect(Token::Kind::Int);
        return static_cast<unsigned>(std::stoul(t.text));
    }

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(msg, t.line, t.col);
    }

    Lexer lex_;
    ProblemSpec spec_;
    std::vector<bool> has_support_;
};

}  // namespace

const AnsatzDecl& ProblemSpec::unknown(const std::string& fn) const {
    for (const auto& u : unknowns)
        if (u.func == fn) return u;
    throw UnknownFunction("unknown function '" + fn + "'");
}

bool ProblemSpec::is_unknown(const std::string& fn) const {
    for (const auto& u : unknowns)
        if (u.func == fn) return true;
    return false;
}

ProblemSpec parse_problem(const std::string& text) { return ProblemParser(text).parse(); }

}  // namespace pssm
