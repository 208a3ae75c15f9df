#include "pssm/text.hpp"

#include <cctype>

namespace pssm {
namespace {

// Recursive-descent parser over the expression grammar
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' INT]
//   atom   := INT | NAME | '(' expr ')'
// evaluated directly in rational-function arithmetic.
class RfParser {
public:
    RfParser(std::string_view text, SymbolTablePtr table, bool intern)
        : text_(text), table_(std::move(table)), intern_(intern) {}

    RationalFunction parse() {
        auto v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return v;
    }

private:
    RationalFunction expr() {
        skip_ws();
        bool neg = accept('-');
        RationalFunction acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    RationalFunction term() {
        RationalFunction acc = factor();
        while (true) {
            skip_ws();
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                acc = acc / factor();
            } else {
                return acc;
            }
        }
    }

    RationalFunction factor() {
        RationalFunction base = atom();
        skip_ws();
        if (accept('^')) {
            unsigned e = integer_literal();
            RationalFunction out = RationalFunction::from(Polynomial::constant(1, table_));
            for (unsigned i = 0; i < e; ++i) out *= base;
            return out;
        }
        return base;
    }

    RationalFunction atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto v = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return RationalFunction::from(Polynomial::constant(rational_from_string(digits()), table_));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = identifier();
            Symbol s;
            if (intern_) {
                s = table_->intern(name);
            } else if (auto found = table_->find(name)) {
                s = *found;
            } else {
                fail("unknown symbol '" + name + "'");
            }
            return RationalFunction::from_symbol(s, table_);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::string(text_.substr(start, pos_ - start));
    }

    unsigned integer_literal() {
        const std::string d = digits();
        if (d.size() > 6) fail("exponent too large");
        return static_cast<unsigned>(std::stoul(d));
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " in '" + std::string(text_) + "'", 1, pos_ + 1);
    }

    std::string_view text_;
    SymbolTablePtr table_;
    bool intern_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_ratfunc(std::string_view text, const SymbolTablePtr& table, bool intern) {
    return RfParser(text, table, intern).parse();
}

Polynomial parse_polynomial(std::string_view text, const SymbolTablePtr& table, bool intern) {
    RationalFunction rf = parse_ratfunc(text, table, intern);
    if (!(rf.den().is_constant() && rf.den().constant_value() == 1)) {
        auto q = rf.num().divide_exact(rf.den());
        if (!q) throw Error("expected a polynomial, got a proper rational function: '" +
                            std::string(text) + "'");
        return *q;
    }
    return rf.num();
}

}  // namespace pssm
