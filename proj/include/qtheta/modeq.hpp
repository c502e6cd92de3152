#pragma once

#include <vector>

#include "qtheta/bigreal.hpp"
#include "qtheta/errors.hpp"
#include "qtheta/invariants.hpp"
#include "qtheta/precision.hpp"
#include "qtheta/qseries.hpp"
#include "qtheta/rational.hpp"

// The degree-2 modular machinery built on two eta-quotient pairs:
//   variant A: P = f(-q)/(q^(1/8) f(-q^4)),  Q = f(-q^2)/(q^(1/4) f(-q^8))
//     satisfying (PQ)^4 + (4/(PQ))^4 = (Q/P)^12 - 16 (P/Q)^4 - 16 (Q/P)^4
//   variant B: P = f(q)/(q^(1/24) f(q^2)),   Q = f(-q^2)/(q^(1/12) f(-q^4))
//     satisfying Q^16 - P^4 Q^14 + 8 P^4 Q^2 - 4 P^8 = 0
// plus the closed forms that solve variant B's relation for P/Q and (PQ)^4,
// the Lambda = (g^12 + g^-12)/2 engine that produces G_{2n} and G_{n/2}
// from g_{2n}, and the closed form for a_{m,2}.

namespace qtheta {

enum class PQVariant { root8, root24 };

struct PQPair {
    BigReal P;
    BigReal Q;
    PQVariant variant;
    BigReal q;
};

struct LambdaValue {
    BigReal lambda;
    BigReal g_source;
};

struct GPairResult {
    BigReal G_2n;
    BigReal G_half_n;
    BigReal h; // sqrt(2) * G_2n * G_half_n
    std::vector<BigReal> roots_considered;
};

inline PQPair pq_of(const QArgument& qa, PQVariant variant, const PrecisionContext& ctx) {
    const BigReal& q = qa.q;
    if (q.sign() <= 0) throw domain_error("eta quotients need 0 < q < 1");
    BigReal q2 = q * q;
    if (variant == PQVariant::root24) {
        BigReal P = euler_f(q, ctx) / (pow_rational(q, 1, 24, ctx) * euler_f(q2, ctx));
        BigReal Q = euler_f(-q2, ctx) /
                    (pow_rational(q, 1, 12, ctx) * euler_f(-ipow(q, 4), ctx));
        return {std::move(P), std::move(Q), variant, q};
    }
    BigReal P = euler_f(-q, ctx) / (pow_rational(q, 1, 8, ctx) * euler_f(-ipow(q, 4), ctx));
    BigReal Q = euler_f(-q2, ctx) / (pow_rational(q, 1, 4, ctx) * euler_f(-ipow(q, 8), ctx));
    return {std::move(P), std::move(Q), variant, q};
}

// |Q^16 - P^4 Q^14 + 8 P^4 Q^2 - 4 P^8| / max(|Q^16|, |P^4 Q^14|); the
// denominator tracks the largest monomial so the residual stays meaningful
// as P and Q blow up like negative powers of q.
inline BigReal residual_root24_relation(const QArgument& qa, const PrecisionContext& ctx) {
    PQPair pq = pq_of(qa, PQVariant::root24, ctx);
    BigReal P4 = ipow(pq.P, 4);
    BigReal Q2 = ipow(pq.Q, 2);
    BigReal Q14 = ipow(pq.Q, 14);
    BigReal t1 = Q14 * Q2;
    BigReal t2 = P4 * Q14;
    BigReal lhs = t1 - t2 + P4 * Q2 * 8 - ipow(P4, 2) * 4;
    BigReal scale = abs_of(t1);
    BigReal a2 = abs_of(t2);
    if (a2 > scale) scale = a2;
    return abs_of(lhs) / scale;
}

// Relative residual of (PQ)^4 + (4/(PQ))^4 - (Q/P)^12 + 16 (P/Q)^4 + 16 (Q/P)^4.
inline BigReal residual_root8_relation(const QArgument& qa, const PrecisionContext& ctx) {
    PQPair pq = pq_of(qa, PQVariant::root8, ctx);
    BigReal pq4 = ipow(pq.P * pq.Q, 4);
    BigReal r = pq.Q / pq.P;
    BigReal r4 = ipow(r, 4);
    BigReal r12 = ipow(r, 12);
    BigReal lhs = pq4 + ipow(4 / (pq.P * pq.Q), 4) - r12 + 16 / r4 + r4 * 16;
    BigReal scale = abs_of(r12);
    BigReal a2 = abs_of(pq4);
    if (a2 > scale) scale = a2;
    return abs_of(lhs) / scale;
}

namespace detail {

// The discriminant combination sqrt(S) - sqrt(S - 16) with S = Q^12 + 64/Q^12,
// written through t = (Q^12 - 8)/Q^6, which satisfies t^2 = S - 16: the
// root pair becomes sqrt(t^2 + 16) -+ t, and keeping t's sign (rather than
// |t|) selects the branch that tracks P/Q on both sides of Q^12 = 8. The
// t >= 0 side is computed as 16/(sqrt(t^2+16) + t) to dodge cancellation.
inline BigReal branch_combination(const BigReal& Qval, const PrecisionContext& ctx) {
    if (Qval.sign() <= 0) throw domain_error("closed forms need Q > 0");
    BigReal Q6 = ipow(Qval, 6);
    BigReal t = (ipow(Q6, 2) - 8) / Q6;
    BigReal root = sqrt_of(t * t + 16);
    if (t.sign() >= 0) return 16 / (root + t);
    return root - t;
}

} // namespace detail

// P/Q = (Q/2^(3/4)) (sqrt(S) - sqrt(S-16))^(1/4), S = Q^12 + 64/Q^12.
inline BigReal ratio_closed_form(const BigReal& Qval, const PrecisionContext& ctx) {
    BigReal inner = detail::branch_combination(Qval, ctx);
    return Qval / pow_rational(BigReal(2, ctx), 3, 4, ctx) * pow_rational(inner, 1, 4, ctx);
}

// P^4 Q^4 = (Q^12/8) (sqrt(S) - sqrt(S-16)).
inline BigReal p4q4_closed_form(const BigReal& Qval, const PrecisionContext& ctx) {
    BigReal inner = detail::branch_combination(Qval, ctx);
    return ipow(Qval, 12) / 8 * inner;
}

inline LambdaValue lambda_of_g(const BigReal& g, const PrecisionContext& ctx) {
    if (g.sign() <= 0) throw domain_error("Lambda needs g > 0");
    BigReal g12 = ipow(g, 12);
    return {(g12 + 1 / g12) / 2, g};
}

namespace detail {

// sqrt(Lambda - 1) without cancellation: Lambda - 1 = (g^6 - g^-6)^2 / 2.
inline BigReal sqrt_lambda_minus_1(const BigReal& g, const PrecisionContext& ctx) {
    BigReal g6 = ipow(g, 6);
    return abs_of(g6 - 1 / g6) / sqrt_of(BigReal(2, ctx));
}

} // namespace detail

// G_{2n}/G_{n/2} = (1/g_{2n}) (sqrt(Lambda) + sqrt(Lambda-1))^(1/4).
inline BigReal G_ratio_from_g(const BigReal& g2n, const PrecisionContext& ctx) {
    LambdaValue lv = lambda_of_g(g2n, ctx);
    BigReal inner = sqrt_of(lv.lambda) + detail::sqrt_lambda_minus_1(g2n, ctx);
    return pow_rational(inner, 1, 4, ctx) / g2n;
}

// Solve for the pair (G_{2n}, G_{n/2}) from g_{2n} alone: with
//   R = 16 g^12 (sqrt(L) + sqrt(L-1)) + 16 g^-12 (sqrt(L) - sqrt(L-1)),
// h = sqrt(2) G_{2n} G_{n/2} satisfies the quartic x^4 - 16x^2 - Rx - 16 = 0
// in x = h^4. R > 0, so the sign pattern (+,0,-,-,-) allows exactly one
// positive root; it is still checked against the direct series evaluation
// of G_{2n}, and a mismatch is an error rather than a silent choice.
inline GPairResult solve_G_pair(const Rational& n, const PrecisionContext& ctx) {
    if (!n.positive()) throw domain_error("index must be positive");
    BigReal g = class_g(InvariantIndex(n * Rational(2)), ctx);
    LambdaValue lv = lambda_of_g(g, ctx);
    BigReal sl = sqrt_of(lv.lambda);
    BigReal slm1 = detail::sqrt_lambda_minus_1(g, ctx);
    BigReal plus = sl + slm1;
    BigReal minus = 1 / plus; // (sqrt(L)-sqrt(L-1))(sqrt(L)+sqrt(L-1)) = 1
    BigReal g12 = ipow(g, 12);
    BigReal R = g12 * plus * 16 + minus / g12 * 16;

    auto quartic = [&](const BigReal& x) {
        return ipow(x, 4) - ipow(x, 2) * 16 - R * x - 16;
    };
    auto quartic_deriv = [&](const BigReal& x) {
        return ipow(x, 3) * 4 - x * 32 - R;
    };

    // bracket the positive root, bisect, then polish with Newton
    BigReal lo(BigReal(0, ctx));
    BigReal hi(4, ctx);
    int grow = 0;
    while (quartic(hi).sign() <= 0) {
        hi = hi * 2;
        if (++grow > 2000) throw verification_error("quartic in h^4 has no reachable positive root");
    }
    for (int i = 0; i < 80; ++i) {
        BigReal mid = (lo + hi) / 2;
        if (quartic(mid).sign() <= 0) lo = mid; else hi = mid;
    }
    BigReal x = (lo + hi) / 2;
    long iters = 4; // 80 bisections give ~20 digits; Newton doubles per step
    for (long have = 20; have < 2 * ctx.decimal_digits; have *= 2) ++iters;
    for (long i = 0; i < iters + 2; ++i) x = x - quartic(x) / quartic_deriv(x);

    BigReal h = pow_rational(x, 1, 4, ctx);
    BigReal ratio = G_ratio_from_g(g, ctx);
    BigReal sqrt2 = sqrt_of(BigReal(2, ctx));
    BigReal G2n = sqrt_of(ratio * h / sqrt2);
    BigReal Ghalf = sqrt_of(h / (sqrt2 * ratio));

    BigReal direct = class_G(InvariantIndex(n * Rational(2)), ctx);
    if (agreement_digits(G2n, direct) < ctx.decimal_digits / 2)
        throw verification_error(
            "the positive quartic root does not reproduce the direct invariant at n = " +
            n.to_string());
    return {std::move(G2n), std::move(Ghalf), std::move(h), {x}};
}

// a_{m,2} = g_{2m}^-6 (sqrt(Lambda) + sqrt(Lambda-1))^(1/2) with g = class_g(2m).
inline BigReal a_m2_from_g(const Rational& m, const PrecisionContext& ctx) {
    if (!m.positive()) throw domain_error("index must be positive");
    BigReal g = class_g(InvariantIndex(m * Rational(2)), ctx);
    BigReal inner = sqrt_of(lambda_of_g(g, ctx).lambda) + detail::sqrt_lambda_minus_1(g, ctx);
    return sqrt_of(inner) / ipow(g, 6);
}

} // namespace qtheta
