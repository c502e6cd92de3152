#pragma once

#include <cmath>

#include "qtheta/bigreal.hpp"
#include "qtheta/errors.hpp"
#include "qtheta/precision.hpp"

// Theta functions and infinite q-products:
//   (a;q)_inf = prod_{n>=0} (1 - a q^n)
//   phi(q)  = sum_{n in Z} q^(n^2)
//   psi(q)  = sum_{n>=0} q^(n(n+1)/2)
//   f(t)    = prod_{n>=1} (1 - (-t)^n), so f(-q) = (q;q)_inf
//   chi(q)  = (-q; q^2)_inf
//   f(a,b)  = sum_{n in Z} a^(n(n+1)/2) b^(n(n-1)/2)
// Truncation indices come from a-priori geometric tail bounds, never from
// observing that terms "look small", so a given (value, digits) request
// always sums the same number of terms.

namespace qtheta {

// A series argument, pinned away from the |q| = 1 divergence boundary.
struct QArgument {
    BigReal q;
    QArgument(BigReal value) : q(std::move(value)) {
        BigReal limit("0.999", PrecisionContext(5));
        if (abs_of(q) > limit)
            throw domain_error("series argument too close to 1: |q| must be <= 0.999");
    }
};

namespace detail {

// log10(|x|) as a double, for sizing truncation indices (not for values).
inline double log10_abs(const BigReal& x) {
    if (x.is_zero()) return -1.0e18;
    BigReal t = BigReal::with_precision(64);
    mpfr_abs(t.raw(), x.raw(), MPFR_RNDN);
    mpfr_log10(t.raw(), t.raw(), MPFR_RNDN);
    return t.to_double();
}

// Smallest n with |a| |q|^n / (1-|q|) < 10^(-digits): geometric tail of the
// log-product, since |log(1-x)| <= 2|x| for |x| <= 1/2.
inline long product_cutoff(double log10_a, double log10_q, double log10_one_minus_q,
                           int digits) {
    if (log10_q >= 0) throw domain_error("internal: cutoff needs |q| < 1");
    double need = (log10_a - log10_one_minus_q + digits) / (-log10_q);
    long n = static_cast<long>(std::ceil(need)) + 2;
    return n < 1 ? 1 : n;
}

} // namespace detail

inline BigReal qpochhammer_inf(const BigReal& a, const QArgument& qa,
                               const PrecisionContext& ctx) {
    const BigReal& q = qa.q;
    if (a.is_zero()) return BigReal(1, ctx);
    BigReal aq_mag = abs_of(a) * abs_of(q);
    if (aq_mag.cmp_int(1) >= 0)
        throw domain_error("qpochhammer requires |a|*|q| < 1 so the factors converge to 1");

    double lq = detail::log10_abs(q);
    if (q.is_zero()) return 1 - a; // only the n = 0 factor differs from 1
    double l1mq = std::log10(1.0 - std::abs(q.to_double()));
    long cutoff = detail::product_cutoff(detail::log10_abs(a), lq, l1mq,
                                         ctx.decimal_digits + 10);

    BigReal prod(1, ctx);
    BigReal aqn(ctx);
    mpfr_set(aqn.raw(), a.raw(), MPFR_RNDN);
    for (long n = 0; n < cutoff; ++n) {
        prod = prod * (1 - aqn);
        if (prod.is_zero()) return prod; // a q^n hit 1 exactly
        aqn = aqn * q;
    }
    return prod;
}

inline BigReal theta_phi(const QArgument& qa, const PrecisionContext& ctx) {
    const BigReal& q = qa.q;
    if (q.is_zero()) return BigReal(1, ctx);
    double lq = detail::log10_abs(q);
    double need = (ctx.decimal_digits + 10) / (-lq);
    long nmax = static_cast<long>(std::ceil(std::sqrt(need))) + 2;

    BigReal sum(1, ctx);
    BigReal cur(ctx);       // q^(n^2)
    BigReal step(ctx);      // q^(2n-1), the gap between consecutive squares
    mpfr_set(cur.raw(), q.raw(), MPFR_RNDN);
    mpfr_set(step.raw(), q.raw(), MPFR_RNDN);
    BigReal q2 = q * q;
    for (long n = 1; n <= nmax; ++n) {
        sum = sum + cur * 2;
        step = step * q2;
        cur = cur * step;
    }
    return sum;
}

inline BigReal theta_psi(const QArgument& qa, const PrecisionContext& ctx) {
    const BigReal& q = qa.q;
    if (q.is_zero()) return BigReal(1, ctx);
    double lq = detail::log10_abs(q);
    double need = (ctx.decimal_digits + 10) / (-lq);
    long nmax = static_cast<long>(std::ceil(std::sqrt(2.0 * need))) + 2;

    BigReal sum(1, ctx);
    BigReal cur(1, ctx);  // q^(n(n+1)/2)
    BigReal step(ctx);    // q^n
    mpfr_set(step.raw(), q.raw(), MPFR_RNDN);
    for (long n = 1; n <= nmax; ++n) {
        cur = cur * step;
        sum = sum + cur;
        step = step * q;
    }
    return sum;
}

// f(t) = prod (1 - (-t)^n) = (-t; -t)_inf, Euler's function with the sign
// convention that makes f(-q) = (q;q)_inf.
inline BigReal euler_f(const QArgument& ta, const PrecisionContext& ctx) {
    return qpochhammer_inf(-ta.q, QArgument(-ta.q), ctx);
}

inline BigReal chi_of(const QArgument& qa, const PrecisionContext& ctx) {
    return qpochhammer_inf(-qa.q, QArgument(qa.q * qa.q), ctx);
}

// Bilateral series f(a,b) = 1 + sum_{m>=1} [a^T(m) b^T(m-1) + b^T(m) a^T(m-1)]
// with T the triangular numbers; converges iff |ab| < 1.
inline BigReal theta_general(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
    BigReal ab = a * b;
    BigReal limit("0.999", PrecisionContext(5));
    if (abs_of(ab) > limit)
        throw domain_error("theta_general requires |ab| <= 0.999 for convergence");
    if (a.is_zero() || b.is_zero()) return (a + b) + 1; // only n in {0, +-1} survive

    double la = detail::log10_abs(a);
    double lb = detail::log10_abs(b);
    double s = la + lb; // < 0 by the convergence check
    double tgt = ctx.decimal_digits + 10;
    auto first_small = [&](double d) {
        // smallest m with (m^2/2)s + (m/2)d <= -tgt
        return (d + std::sqrt(d * d + 8.0 * tgt * (-s))) / (2.0 * (-s));
    };
    long mmax = static_cast<long>(std::ceil(std::max(first_small(la - lb),
                                                     first_small(lb - la)))) + 2;

    BigReal sum(1, ctx);
    BigReal t(ctx), u(ctx), p(ctx);
    mpfr_set(t.raw(), a.raw(), MPFR_RNDN); // a^T(m) b^T(m-1), m = 1
    mpfr_set(u.raw(), b.raw(), MPFR_RNDN); // b^T(m) a^T(m-1), m = 1
    mpfr_set(p.raw(), ab.raw(), MPFR_RNDN); // (ab)^m
    for (long m = 1; m <= mmax; ++m) {
        sum = sum + t + u;
        t = t * p * a;
        u = u * p * b;
        p = p * ab;
    }
    return sum;
}

} // namespace qtheta
