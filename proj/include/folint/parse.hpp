#pragma once
#include <cctype>
#include <string>
#include "poly.hpp"

// polynomial expression parser
//
// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := base ('^' uint)?
// base   := rational | variable | '(' expr ')'
//
// multiplication is always explicit; whitespace is insignificant

namespace folint {

namespace detail {

class PolyParser {
    const std::string& src_;
    const GradingContext& ctx_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < src_.size(); ++i) {
            if (src_[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Int parse_uint() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) ++pos_;
        if (pos_ == start) fail("expected a number");
        return Int(src_.substr(start, pos_ - start));
    }

    MultiPoly parse_base() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit((unsigned char)c)) {
            Int n = parse_uint();
            if (eat('/')) {
                Int d = parse_uint();
                if (d == 0) fail("zero denominator");
                return const_poly(ctx_.nvars(), Scalar(make_rat(n, d)));
            }
            return const_poly(ctx_.nvars(), Scalar(Rat(n)));
        }
        for (int v = 0; v < ctx_.nvars(); ++v) {
            std::string name = ctx_.var_name(v);
            if (src_.compare(pos_, name.size(), name) == 0) {
                // longest match first: X0 before X would match, so prefer longer names
                bool shadowed = false;
                for (int w = 0; w < ctx_.nvars(); ++w) {
                    std::string other = ctx_.var_name(w);
                    if (other.size() > name.size() &&
                        src_.compare(pos_, other.size(), other) == 0)
                        shadowed = true;
                }
                if (shadowed) continue;
                pos_ += name.size();
                return var_poly(ctx_.nvars(), v);
            }
        }
        fail("expected a coefficient, a variable, or '('");
    }

    MultiPoly parse_factor() {
        MultiPoly b = parse_base();
        if (eat('^')) {
            Int e = parse_uint();
            if (e > 512) fail("exponent too large");
            return pow_poly(b, e.get_si());
        }
        return b;
    }

    MultiPoly parse_term() {
        MultiPoly t = parse_factor();
        while (eat('*')) t = t * parse_factor();
        return t;
    }

    MultiPoly parse_expr() {
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (src_[pos_++] == '-');
        MultiPoly e = parse_term();
        if (neg) e = -e;
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                MultiPoly t = parse_term();
                e = (c == '+') ? e + t : e - t;
            } else break;
        }
        return e;
    }

public:
    PolyParser(const std::string& s, const GradingContext& ctx) : src_(s), ctx_(ctx) {}

    MultiPoly run() {
        MultiPoly p = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return p;
    }
};

} // namespace detail

inline MultiPoly parse_poly(const std::string& s, const GradingContext& ctx) {
    return detail::PolyParser(s, ctx).run();
}

} // namespace folint
