#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "qtheta/bigreal.hpp"
#include "qtheta/errors.hpp"
#include "qtheta/rational.hpp"

// Exact nested-radical expressions under the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' '(' int '/' int ')')?
//   base   := integer | '(' expr ')' | 'sqrt' '(' expr ')' | 'root' '(' expr ',' integer ')'
// sqrt(x) and root(x,k) are sugar for x^(1/2) and x^(1/k). No implicit
// multiplication, no floating literals: every leaf and exponent is exact.

namespace qtheta {

struct RadicalExpr {
    enum class Kind { literal, add, sub, mul, div, pow };

    Kind kind = Kind::literal;
    Rational value;                // literal: the exact number
    Rational exponent;             // pow: child ^ (exponent)
    std::vector<RadicalExpr> kids; // two for add/sub/mul/div, one for pow

    friend bool operator==(const RadicalExpr& a, const RadicalExpr& b) {
        return a.kind == b.kind && a.value == b.value && a.exponent == b.exponent &&
               a.kids == b.kids;
    }
};

namespace detail {

class RadicalParser {
  public:
    explicit RadicalParser(std::string_view text) : text_(text) {}

    RadicalExpr run() {
        RadicalExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing text", pos_);
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c)
            throw parse_error(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    bool eat(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    long long integer(bool allow_sign) {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (allow_sign && pos_ < text_.size() && text_[pos_] == '-') { neg = true; ++pos_; }
        std::size_t digits_begin = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits_begin) throw parse_error("expected an integer", start);
        if (pos_ - digits_begin > 18) throw parse_error("integer literal too large", start);
        long long v = 0;
        for (std::size_t i = digits_begin; i < pos_; ++i) v = v * 10 + (text_[i] - '0');
        return neg ? -v : v;
    }

    static RadicalExpr make(RadicalExpr::Kind k, RadicalExpr l, RadicalExpr r) {
        RadicalExpr e;
        e.kind = k;
        e.kids.push_back(std::move(l));
        e.kids.push_back(std::move(r));
        return e;
    }
    static RadicalExpr make_pow(RadicalExpr child, Rational expo) {
        RadicalExpr e;
        e.kind = RadicalExpr::Kind::pow;
        e.exponent = expo;
        e.kids.push_back(std::move(child));
        return e;
    }

    RadicalExpr expr() {
        RadicalExpr e = term();
        while (true) {
            if (eat('+')) e = make(RadicalExpr::Kind::add, std::move(e), term());
            else if (eat('-')) e = make(RadicalExpr::Kind::sub, std::move(e), term());
            else return e;
        }
    }

    RadicalExpr term() {
        RadicalExpr e = factor();
        while (true) {
            if (eat('*')) e = make(RadicalExpr::Kind::mul, std::move(e), factor());
            else if (eat('/')) e = make(RadicalExpr::Kind::div, std::move(e), factor());
            else return e;
        }
    }

    RadicalExpr factor() {
        RadicalExpr b = base();
        if (!eat('^')) return b;
        expect('(');
        long long p = integer(true);
        expect('/');
        std::size_t den_at = pos_;
        long long r = integer(true);
        expect(')');
        if (r == 0) throw parse_error("zero root index in exponent", den_at);
        return make_pow(std::move(b), Rational(p, r));
    }

    bool keyword(const char* w) {
        skip_ws();
        std::size_t n = std::string_view(w).size();
        if (text_.substr(pos_, n) == w) { pos_ += n; return true; }
        return false;
    }

    RadicalExpr base() {
        skip_ws();
        if (keyword("sqrt")) {
            expect('(');
            RadicalExpr inner = expr();
            expect(')');
            return make_pow(std::move(inner), Rational(1, 2));
        }
        if (keyword("root")) {
            expect('(');
            RadicalExpr inner = expr();
            expect(',');
            std::size_t k_at = pos_;
            long long k = integer(false);
            expect(')');
            if (k < 1) throw parse_error("root index must be >= 1", k_at);
            return make_pow(std::move(inner), Rational(1, k));
        }
        if (eat('(')) {
            RadicalExpr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            RadicalExpr e;
            e.kind = RadicalExpr::Kind::literal;
            e.value = Rational(integer(false));
            return e;
        }
        throw parse_error("expected a number, parenthesis, sqrt, or root", pos_);
    }
};

} // namespace detail

inline RadicalExpr parse_radical(std::string_view text) {
    return detail::RadicalParser(text).run();
}

// Deterministic text form that re-parses to a structurally identical tree:
// compounds fully parenthesized, sqrt/root rendered as ^(1/k).
inline std::string unparse_radical(const RadicalExpr& e) {
    switch (e.kind) {
        case RadicalExpr::Kind::literal:
            return e.value.to_string();
        case RadicalExpr::Kind::add:
            return "(" + unparse_radical(e.kids[0]) + "+" + unparse_radical(e.kids[1]) + ")";
        case RadicalExpr::Kind::sub:
            return "(" + unparse_radical(e.kids[0]) + "-" + unparse_radical(e.kids[1]) + ")";
        case RadicalExpr::Kind::mul:
            return "(" + unparse_radical(e.kids[0]) + "*" + unparse_radical(e.kids[1]) + ")";
        case RadicalExpr::Kind::div:
            return "(" + unparse_radical(e.kids[0]) + "/" + unparse_radical(e.kids[1]) + ")";
        case RadicalExpr::Kind::pow: {
            std::string body = unparse_radical(e.kids[0]);
            if (e.kids[0].kind == RadicalExpr::Kind::pow) body = "(" + body + ")";
            return body + "^(" + std::to_string(e.exponent.num) + "/" +
                   std::to_string(e.exponent.den) + ")";
        }
    }
    throw error("unreachable expression kind");
}

inline BigReal eval_radical(const RadicalExpr& e, const PrecisionContext& ctx) {
    switch (e.kind) {
        case RadicalExpr::Kind::literal:
            return BigReal(e.value, ctx);
        case RadicalExpr::Kind::add:
            return eval_radical(e.kids[0], ctx) + eval_radical(e.kids[1], ctx);
        case RadicalExpr::Kind::sub:
            return eval_radical(e.kids[0], ctx) - eval_radical(e.kids[1], ctx);
        case RadicalExpr::Kind::mul:
            return eval_radical(e.kids[0], ctx) * eval_radical(e.kids[1], ctx);
        case RadicalExpr::Kind::div: {
            BigReal den = eval_radical(e.kids[1], ctx);
            if (den.is_zero())
                throw domain_error("division by zero in " + unparse_radical(e));
            return eval_radical(e.kids[0], ctx) / den;
        }
        case RadicalExpr::Kind::pow: {
            BigReal v = eval_radical(e.kids[0], ctx);
            long long p = e.exponent.num, r = e.exponent.den;
            if (v.is_zero()) {
                if (p > 0) return BigReal(0, ctx);
                throw domain_error("zero base with nonpositive exponent in " + unparse_radical(e));
            }
            if (v.sign() > 0) return pow_rational(v, p, r, ctx);
            if (r % 2 == 0)
                throw domain_error("even root of negative value in " + unparse_radical(e));
            BigReal mag = pow_rational(-v, p, r, ctx);
            return (p % 2 != 0) ? -mag : mag;
        }
    }
    throw error("unreachable expression kind");
}

} // namespace qtheta
