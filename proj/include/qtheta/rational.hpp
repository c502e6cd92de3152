#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "qtheta/errors.hpp"

namespace qtheta {

// Exact rational with 64-bit parts, normalized to lowest terms with a
// positive denominator. Indices like 23/2 and exponents like -7/8 must be
// exact, never floating point.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw domain_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool positive() const { return num > 0; }
    bool is_integer() const { return den == 1; }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw domain_error("rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "23", "-7", "23/2"; used for CLI index arguments. The whole
    // string must be consumed, so "1.5" and "2x" are rejected.
    static Rational parse(std::string_view text) {
        auto whole = [](std::string_view s) {
            std::size_t used = 0;
            long long v = std::stoll(std::string(s), &used);
            if (used != s.size()) throw domain_error("trailing characters");
            return v;
        };
        std::size_t slash = text.find('/');
        try {
            if (slash == std::string_view::npos) return Rational(whole(text));
            return Rational(whole(text.substr(0, slash)), whole(text.substr(slash + 1)));
        } catch (const std::exception&) {
            throw domain_error("cannot parse rational from '" + std::string(text) + "'");
        }
    }
};

// An invariant index n must be a positive rational in lowest terms.
struct InvariantIndex {
    Rational n;
    InvariantIndex(Rational r) : n(r) {
        if (!n.positive()) throw domain_error("invariant index must be positive: " + n.to_string());
    }
    InvariantIndex(long long v) : InvariantIndex(Rational(v)) {}
    InvariantIndex(long long p, long long q) : InvariantIndex(Rational(p, q)) {}
};

} // namespace qtheta
