#pragma once

#include "qtheta/bigreal.hpp"
#include "qtheta/errors.hpp"
#include "qtheta/precision.hpp"
#include "qtheta/qseries.hpp"
#include "qtheta/rational.hpp"

// Class invariants and singular moduli:
//   G_n = 2^(-1/4) q^(-1/24) chi(q),  g_n = 2^(-1/4) q^(-1/24) chi(-q)
// at the nome q = e^(-pi sqrt(n)), together with
//   alpha_n = (f(q) / (2^(1/2) q^(1/8) f(-q^4)))^(-8),
//   alpha(q) = 1 - phi^4(-q)/phi^4(q),
// the degree-2 multiplier m = phi^2(q)/phi^2(q^2), the complete elliptic
// integral K, and the theta quotient
//   a_{m,n} = n q^((n-1)/4) psi^2(q^n) phi^2(-q^(2n)) / (psi^2(q) phi^2(-q^2))
// at q = e^(-pi sqrt(m/n)).

namespace qtheta {

struct ModuliPair {
    BigReal alpha;
    BigReal beta;
    BigReal multiplier_m;
};

inline BigReal nome(const Rational& r, const PrecisionContext& ctx) {
    if (!r.positive()) throw domain_error("nome index must be positive: " + r.to_string());
    BigReal root = sqrt_of(BigReal(r, ctx));
    return exp_of(-(const_pi(ctx) * root), ctx);
}

inline BigReal nome(const InvariantIndex& n, const PrecisionContext& ctx) {
    return nome(n.n, ctx);
}

namespace detail {

// 2^(-1/4) q^(-1/24) chi(sign * q) at q = e^(-pi sqrt(n)).
inline BigReal weber_invariant(const InvariantIndex& n, int sign, const PrecisionContext& ctx) {
    BigReal q = nome(n, ctx);
    BigReal c = chi_of(sign < 0 ? -q : q, ctx);
    BigReal front = pow_rational(BigReal(2, ctx), -1, 4, ctx) * pow_rational(q, -1, 24, ctx);
    return front * c;
}

} // namespace detail

inline BigReal class_G(const InvariantIndex& n, const PrecisionContext& ctx) {
    return detail::weber_invariant(n, +1, ctx);
}

inline BigReal class_g(const InvariantIndex& n, const PrecisionContext& ctx) {
    return detail::weber_invariant(n, -1, ctx);
}

// g_{4n} = 2^(1/4) g_n G_n, cross-checked against the direct evaluation of
// g at 4n; a mismatch means a precision or logic fault, never a math fact.
inline BigReal g_of_4n(const InvariantIndex& n, const PrecisionContext& ctx) {
    BigReal composed = pow_rational(BigReal(2, ctx), 1, 4, ctx) *
                       class_g(n, ctx) * class_G(n, ctx);
    BigReal direct = class_g(InvariantIndex(n.n * Rational(4)), ctx);
    if (agreement_digits(composed, direct) < ctx.decimal_digits - 10)
        throw verification_error("g_{4n} composition disagrees with direct evaluation at n = " +
                                 n.n.to_string());
    return composed;
}

// alpha_n = (f(q) / (2^(1/2) q^(1/8) f(-q^4)))^(-8) at q = e^(-pi sqrt(n)).
inline BigReal alpha_singular(const InvariantIndex& n, const PrecisionContext& ctx) {
    BigReal q = nome(n, ctx);
    BigReal q4 = ipow(q, 4);
    BigReal ratio = euler_f(q, ctx) /
                    (pow_rational(BigReal(2, ctx), 1, 2, ctx) *
                     pow_rational(q, 1, 8, ctx) * euler_f(-q4, ctx));
    BigReal alpha = ipow(ratio, -8);
    if (alpha.sign() <= 0 || alpha.cmp_int(1) >= 0)
        throw precision_error("singular modulus escaped (0,1) at n = " + n.n.to_string());
    return alpha;
}

// alpha = 1 - phi^4(-q)/phi^4(q), the modulus attached to the nome q.
inline BigReal alpha_of_q(const QArgument& qa, const PrecisionContext& ctx) {
    if (qa.q.sign() <= 0) throw domain_error("alpha_of_q requires 0 < q < 1");
    BigReal num = theta_phi(-qa.q, ctx);
    BigReal den = theta_phi(qa.q, ctx);
    return 1 - ipow(num / den, 4);
}

// Degree-2 moduli pair: alpha at q, beta at q^2, multiplier phi^2(q)/phi^2(q^2).
inline ModuliPair multiplier_deg2(const QArgument& qa, const PrecisionContext& ctx) {
    if (qa.q.sign() <= 0) throw domain_error("multiplier_deg2 requires 0 < q < 1");
    BigReal alpha = alpha_of_q(qa, ctx);
    BigReal beta = alpha_of_q(qa.q * qa.q, ctx);
    BigReal p1 = theta_phi(qa.q, ctx);
    BigReal p2 = theta_phi(qa.q * qa.q, ctx);
    ModuliPair out{alpha, beta, (p1 * p1) / (p2 * p2)};
    if (out.alpha.sign() <= 0 || out.alpha.cmp_int(1) >= 0 ||
        out.beta.sign() <= 0 || out.beta.cmp_int(1) >= 0 || out.multiplier_m.sign() <= 0)
        throw precision_error("degree-2 moduli escaped their ranges");
    return out;
}

// K(k) = (pi/2) sum_j ((1/2)_j / j!)^2 k^(2j) for k <= 0.9; the quadratic
// arithmetic-geometric mean K = pi / (2 AGM(1, sqrt(1-k^2))) takes over
// nearer to 1, where the series loses its geometric tail.
inline BigReal elliptic_K(const BigReal& k, const PrecisionContext& ctx) {
    if (k.sign() < 0 || k.cmp_int(1) >= 0)
        throw domain_error("elliptic_K requires 0 <= k < 1");
    if (k.is_zero()) return const_pi(ctx) / 2;

    BigReal series_limit("0.9", PrecisionContext(5));
    if (k <= series_limit) {
        // terms are bounded by k^(2j), so the geometric tail rule applies
        double lk = detail::log10_abs(k);
        long jmax = static_cast<long>(std::ceil((ctx.decimal_digits + 10) / (-2.0 * lk))) + 2;
        BigReal k2 = k * k;
        BigReal coeff(1, ctx);
        BigReal power(1, ctx);
        BigReal sum(1, ctx);
        for (long j = 1; j <= jmax; ++j) {
            coeff = coeff * (2 * j - 1) / (2 * j);
            power = power * k2;
            sum = sum + coeff * coeff * power;
        }
        return const_pi(ctx) / 2 * sum;
    }

    BigReal a(1, ctx);
    BigReal b = sqrt_of(1 - k * k);
    BigReal stop = BigReal::with_precision(64);
    mpfr_set_ui_2exp(stop.raw(), 1,
                     -static_cast<mpfr_exp_t>(ctx.working_precision()) + 4, MPFR_RNDN);
    for (int i = 0; i < 200 && abs_of(a - b) > stop; ++i) {
        BigReal an = (a + b) / 2;
        b = sqrt_of(a * b);
        a = an;
    }
    return const_pi(ctx) / (a * 2);
}

namespace detail {

// Shared skeleton of the two printed forms of a_{m,n}; `alt` switches
// between psi^2(q^n) phi^2(-q^(2n)) / (psi^2(q) phi^2(-q^2)) and
// psi^2(-q^n) phi^2(q^n) / (psi^2(-q) phi^2(q)).
inline BigReal a_quotient(const Rational& m, const Rational& n, bool alt,
                          const PrecisionContext& ctx) {
    if (!m.positive() || !n.positive())
        throw domain_error("a_{m,n} requires positive rational m and n");
    BigReal q = nome(m / n, ctx);
    BigReal qn = pow_rational(q, n, ctx);
    BigReal front = BigReal(n, ctx) *
                    pow_rational(q, n.num - n.den, 4 * n.den, ctx);
    BigReal num, den;
    if (!alt) {
        num = ipow(theta_psi(qn, ctx), 2) * ipow(theta_phi(-(qn * qn), ctx), 2);
        den = ipow(theta_psi(q, ctx), 2) * ipow(theta_phi(-(q * q), ctx), 2);
    } else {
        num = ipow(theta_psi(-qn, ctx), 2) * ipow(theta_phi(qn, ctx), 2);
        den = ipow(theta_psi(-q, ctx), 2) * ipow(theta_phi(q, ctx), 2);
    }
    return front * num / den;
}

} // namespace detail

inline BigReal a_product(const Rational& m, const Rational& n, const PrecisionContext& ctx) {
    return detail::a_quotient(m, n, false, ctx);
}

inline BigReal a_product_alt(const Rational& m, const Rational& n, const PrecisionContext& ctx) {
    return detail::a_quotient(m, n, true, ctx);
}

} // namespace qtheta
