#pragma once

#include <mpfr.h>

#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

#include "qtheta/errors.hpp"
#include "qtheta/precision.hpp"
#include "qtheta/rational.hpp"

namespace qtheta {

enum class Ordering { less, indistinguishable, greater };

// Immutable-style arbitrary-precision real. Every arithmetic operation is
// correctly rounded (MPFR round-to-nearest-even), so each primitive stays
// well inside the 2^(-W+4) relative-error budget. Binary operations carry
// the larger operand precision.
class BigReal {
  public:
    BigReal() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }

    explicit BigReal(const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.working_precision());
        mpfr_set_zero(v_, 1);
    }

    BigReal(long long n, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.working_precision());
        mpfr_set_si(v_, n, MPFR_RNDN);
    }

    BigReal(const Rational& r, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.working_precision());
        mpfr_set_si(v_, r.num, MPFR_RNDN);
        mpfr_div_si(v_, v_, r.den, MPFR_RNDN);
    }

    // Decimal string (optional sign, point, 'e' exponent), e.g. "0.999" or "1e-300".
    BigReal(std::string_view text, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.working_precision());
        std::string s(text);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw domain_error("cannot parse decimal number '" + s + "'");
    }

    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.precision(), b.precision()), raw_tag{});
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.precision(), b.precision()), raw_tag{});
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.precision(), b.precision()), raw_tag{});
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        if (b.is_zero()) throw domain_error("division by zero");
        BigReal r(std::max(a.precision(), b.precision()), raw_tag{});
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator+(const BigReal& a, long long n) {
        BigReal r(a.precision(), raw_tag{});
        mpfr_add_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, long long n) {
        BigReal r(a.precision(), raw_tag{});
        mpfr_sub_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(long long n, const BigReal& a) {
        BigReal r(a.precision(), raw_tag{});
        mpfr_si_sub(r.v_, n, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, long long n) {
        BigReal r(a.precision(), raw_tag{});
        mpfr_mul_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(long long n, const BigReal& a) { return a * n; }
    friend BigReal operator/(const BigReal& a, long long n) {
        if (n == 0) throw domain_error("division by zero");
        BigReal r(a.precision(), raw_tag{});
        mpfr_div_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(long long n, const BigReal& a) {
        if (a.is_zero()) throw domain_error("division by zero");
        BigReal r(a.precision(), raw_tag{});
        mpfr_si_div(r.v_, n, a.v_, MPFR_RNDN);
        return r;
    }
    BigReal operator-() const {
        BigReal r(precision(), raw_tag{});
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    int cmp_int(long long n) const { return mpfr_cmp_si(v_, n); }

    // Largest decimal digit count this value's precision can certify; the
    // working precision always includes guard bits, so subtract most of the
    // default guard before converting bits to digits.
    int decimal_capacity() const {
        long bits = static_cast<long>(precision()) - 60;
        if (bits < 8) bits = 8;
        return static_cast<int>(static_cast<double>(bits) / 3.3219281);
    }

    static BigReal with_precision(mpfr_prec_t p) { return BigReal(p, raw_tag{}); }

  private:
    struct raw_tag {};
    BigReal(mpfr_prec_t p, raw_tag) { mpfr_init2(v_, p); mpfr_set_nan(v_); }
    mpfr_t v_;
};

inline BigReal abs_of(const BigReal& x) {
    BigReal r = BigReal::with_precision(x.precision());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline BigReal sqrt_of(const BigReal& x) {
    if (x.sign() < 0) throw domain_error("square root of negative value");
    BigReal r = BigReal::with_precision(x.precision());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

// Integer power at the operand's precision; exponent may be negative.
inline BigReal ipow(const BigReal& x, long long e) {
    if (x.is_zero() && e <= 0)
        throw domain_error(e == 0 ? "0^0 is undefined here" : "negative power of zero");
    BigReal r = BigReal::with_precision(x.precision());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

inline BigReal const_pi(const PrecisionContext& ctx) {
    BigReal r = BigReal::with_precision(ctx.working_precision());
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

inline BigReal exp_of(const BigReal& x, const PrecisionContext& ctx) {
    if (!x.is_finite()) throw domain_error("exp of non-finite value");
    BigReal r = BigReal::with_precision(ctx.working_precision());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    if (!r.is_finite())
        throw domain_error("exp overflow: argument beyond representable range");
    return r;
}

inline BigReal log_of(const BigReal& x, const PrecisionContext& ctx) {
    if (x.sign() <= 0) throw domain_error("log of nonpositive value");
    BigReal r = BigReal::with_precision(ctx.working_precision());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

// x^(p/r) for x > 0, exact rational exponent: r-th root first (keeps
// magnitudes moderate), then the integer power. Two correctly rounded steps.
inline BigReal pow_rational(const BigReal& x, long long p, long long r,
                            const PrecisionContext& ctx) {
    if (r <= 0) throw domain_error("root index must be positive");
    if (x.sign() <= 0) throw domain_error("pow_rational requires a positive base");
    if (p == 0) return BigReal(1, ctx);
    BigReal root = BigReal::with_precision(ctx.working_precision());
    if (r == 1) {
        mpfr_set(root.raw(), x.raw(), MPFR_RNDN);
    } else {
        mpfr_rootn_ui(root.raw(), x.raw(), static_cast<unsigned long>(r), MPFR_RNDN);
    }
    if (p == 1) return root;
    BigReal out = BigReal::with_precision(ctx.working_precision());
    mpfr_pow_si(out.raw(), root.raw(), p, MPFR_RNDN);
    return out;
}

inline BigReal pow_rational(const BigReal& x, const Rational& e, const PrecisionContext& ctx) {
    return pow_rational(x, e.num, e.den, ctx);
}

// Round-half-even decimal rendering with a fixed layout:
//   plain positional notation while the exponent stays in [-5, digits],
//   otherwise d.ddd...e<exp> scientific form. Bit-exact across platforms.
inline std::string to_decimal(const BigReal& x, int digits) {
    if (digits < 1) throw domain_error("to_decimal requires at least one digit");
    if (digits > x.decimal_capacity())
        throw precision_error("requested " + std::to_string(digits) +
                              " digits exceeds the value's certified capacity of " +
                              std::to_string(x.decimal_capacity()));
    if (!x.is_finite()) throw domain_error("to_decimal of non-finite value");

    if (x.is_zero()) {
        std::string s = "0";
        if (digits > 1) s += "." + std::string(static_cast<std::size_t>(digits - 1), '0');
        return s;
    }

    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits),
                             x.raw(), MPFR_RNDN);
    if (raw == nullptr) throw precision_error("decimal conversion failed");
    std::string mant(raw);
    mpfr_free_str(raw);

    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);

    std::string body;
    if (e >= 1 && e <= digits) {
        body = mant.substr(0, static_cast<std::size_t>(e));
        if (e < digits) body += "." + mant.substr(static_cast<std::size_t>(e));
    } else if (e <= 0 && e >= -5) {
        body = "0." + std::string(static_cast<std::size_t>(-e), '0') + mant;
    } else {
        body = mant.substr(0, 1);
        if (digits > 1) body += "." + mant.substr(1);
        body += "e" + std::to_string(static_cast<long long>(e) - 1);
    }
    return neg ? "-" + body : body;
}

// Deterministic short scientific form used for residuals in reports.
inline std::string format_scientific(const BigReal& x, int sig_digits = 3) {
    if (x.is_zero()) return "0";
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(sig_digits),
                             x.raw(), MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);
    std::string body = mant.substr(0, 1);
    if (sig_digits > 1) body += "." + mant.substr(1);
    body += "e" + std::to_string(static_cast<long long>(e) - 1);
    return neg ? "-" + body : body;
}

// Three-valued comparison at an absolute tolerance.
inline Ordering compare(const BigReal& a, const BigReal& b, const BigReal& tol) {
    BigReal d = a - b;
    if (abs_of(d) <= tol) return Ordering::indistinguishable;
    return d.sign() < 0 ? Ordering::less : Ordering::greater;
}

// floor(-log10(|x-y| / max(|x|,|y|,1e-300))), clamped to [0, capacity].
// The capacity clamp keeps "identical to working precision" answers honest.
inline int agreement_digits(const BigReal& x, const BigReal& y) {
    int cap = std::min(x.decimal_capacity(), y.decimal_capacity());
    BigReal diff = abs_of(x - y);
    if (diff.is_zero()) return cap;
    BigReal scale = abs_of(x);
    BigReal ay = abs_of(y);
    if (ay > scale) scale = ay;
    BigReal floor_val = BigReal::with_precision(64);
    mpfr_set_str(floor_val.raw(), "1e-300", 10, MPFR_RNDN);
    if (floor_val > scale) scale = floor_val;
    BigReal rel = diff / scale;
    BigReal lg = BigReal::with_precision(64);
    mpfr_log10(lg.raw(), rel.raw(), MPFR_RNDN);
    mpfr_neg(lg.raw(), lg.raw(), MPFR_RNDN);
    mpfr_floor(lg.raw(), lg.raw());
    long d = mpfr_get_si(lg.raw(), MPFR_RNDN);
    if (d < 0) return 0;
    if (d > cap) return cap;
    return static_cast<int>(d);
}

} // namespace qtheta
