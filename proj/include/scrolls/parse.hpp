#pragma once

#include "errors.hpp"
#include "multipoly.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace scrolls {

namespace detail {

// Recursive-descent parser for
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
class PolyParser {
public:
    PolyParser(std::string_view text, VarsPtr vars) : text_(text), vars_(std::move(vars)) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 0, pos_ + 1); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, 0, at + 1); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = primary();
        if (!accept('^')) return base;
        skip_space();
        std::size_t at = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') fail_at("negative exponent", at);
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("exponent must be a nonnegative integer literal");
        Integer e = integer_literal();
        skip_space();
        if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) fail_at("fractional exponent", at);
        if (e > 4096) fail_at("exponent too large", at);
        return base.pow(static_cast<unsigned>(e.get_ui()));
    }

    MultiPoly primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer_literal();
            Integer den = 1;
            std::size_t save = pos_;
            if (accept('/')) {
                skip_space();
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    fail("expected integer denominator");
                std::size_t at = pos_;
                den = integer_literal();
                if (den == 0) fail_at("zero denominator", at);
            } else {
                pos_ = save;
            }
            Rational q(num, den);
            q.canonicalize();
            return MultiPoly::constant(vars_, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (std::find(vars_->begin(), vars_->end(), name) == vars_->end())
                fail_at("unknown identifier '" + name + "'", start);
            return MultiPoly::variable(vars_, name);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    Integer integer_literal() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    VarsPtr vars_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse a polynomial expression over `vars`. Errors carry a 1-based column.
inline MultiPoly parse_poly(std::string_view text, const VarsPtr& vars) {
    return detail::PolyParser(text, vars).parse();
}

inline MultiPoly parse_poly(std::string_view text, const VarList& vars) { return parse_poly(text, make_vars(vars)); }

} // namespace scrolls
