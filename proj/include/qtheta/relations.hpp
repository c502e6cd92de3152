#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qtheta/bigreal.hpp"
#include "qtheta/errors.hpp"
#include "qtheta/modeq.hpp"
#include "qtheta/precision.hpp"
#include "qtheta/qseries.hpp"

// Integer-relation detection: given x_1..x_k known to D digits, search for
// integers c (not all zero, |c_i| <= max_norm) with sum c_i x_i = 0 to
// within 10^(-D+2k). The engine reduces the classic relation lattice
//   rows  b_i = (e_i | round(10^s x_i^(1)) ... round(10^s x_i^(t)))
// with an exact-integer LLL (Gram data carried as the integers d_i and
// lambda_{i,j}, every division exact), then validates any short vector
// against the full-precision values. Small scales s run first; a "none"
// verdict is only issued when the full-scale reduction proves that any
// surviving relation would need coefficients beyond max_norm.

namespace qtheta {

// Cooperative cancellation for long reductions; poll from another thread.
struct CancelToken {
    std::atomic<bool> flag{false};
    void cancel() { flag.store(true); }
    bool cancelled() const { return flag.load(); }
};

struct IntegerRelation {
    std::vector<long long> coefficients;
    BigReal residual;          // max over evaluation points of |sum c_i x_i|
    long long norm_bound_used = 0;
};

namespace detail {

inline void check_cancel(const CancelToken* cancel) {
    if (cancel && cancel->cancelled()) throw cancelled_error();
}

inline mpz_class exact_div(const mpz_class& num, const mpz_class& den) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw verification_error("internal: inexact division in lattice reduction");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// round(a/d) for d > 0
inline mpz_class nearest_quotient(const mpz_class& a, const mpz_class& d) {
    mpz_class q;
    mpz_class num = 2 * a + d;
    mpz_class den = 2 * d;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// Exact-integer LLL on n row vectors (1-indexed storage; index 0 unused).
class IntLattice {
  public:
    IntLattice(std::vector<std::vector<mpz_class>> rows, const CancelToken* cancel)
        : n_(static_cast<int>(rows.size())), cancel_(cancel) {
        b_.resize(n_ + 1);
        for (int i = 1; i <= n_; ++i) b_[i] = std::move(rows[i - 1]);
        lam_.assign(n_ + 1, std::vector<mpz_class>(n_ + 1, mpz_class(0)));
        d_.assign(n_ + 1, mpz_class(1));
        init_gram();
    }

    void reduce() {
        int k = 2;
        long steps = 0;
        while (k <= n_) {
            if ((++steps & 0x3f) == 0) check_cancel(cancel_);
            red(k, k - 1);
            mpz_class lhs = 4 * (d_[k] * d_[k - 2] + lam_[k][k - 1] * lam_[k][k - 1]);
            mpz_class rhs = 3 * d_[k - 1] * d_[k - 1];
            if (lhs < rhs) {
                swap_step(k);
                k = std::max(2, k - 1);
            } else {
                for (int l = k - 2; l >= 1; --l) red(k, l);
                ++k;
            }
        }
    }

    int size() const { return n_; }
    const std::vector<mpz_class>& row(int i) const { return b_[i]; } // 1-indexed

    mpz_class row_norm_sq(int i) const {
        mpz_class s = 0;
        for (const auto& v : b_[i]) s += v * v;
        return s;
    }

  private:
    int n_;
    const CancelToken* cancel_;
    std::vector<std::vector<mpz_class>> b_;
    std::vector<std::vector<mpz_class>> lam_;
    std::vector<mpz_class> d_;

    static mpz_class dot(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
        mpz_class s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    }

    void init_gram() {
        d_[0] = 1;
        for (int i = 1; i <= n_; ++i) {
            for (int j = 1; j <= i; ++j) {
                mpz_class u = dot(b_[i], b_[j]);
                for (int m = 1; m < j; ++m)
                    u = exact_div(d_[m] * u - lam_[i][m] * lam_[j][m], d_[m - 1]);
                if (j < i) lam_[i][j] = u;
                else d_[i] = u;
            }
            if (d_[i] == 0)
                throw verification_error("internal: dependent rows in relation lattice");
        }
    }

    void red(int k, int l) {
        mpz_class two_lam = 2 * lam_[k][l];
        if (mpz_cmpabs(two_lam.get_mpz_t(), d_[l].get_mpz_t()) <= 0) return;
        mpz_class q = nearest_quotient(lam_[k][l], d_[l]);
        for (std::size_t c = 0; c < b_[k].size(); ++c) b_[k][c] -= q * b_[l][c];
        lam_[k][l] -= q * d_[l];
        for (int m = 1; m < l; ++m) lam_[k][m] -= q * lam_[l][m];
    }

    void swap_step(int k) {
        std::swap(b_[k], b_[k - 1]);
        for (int j = 1; j <= k - 2; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
        mpz_class l0 = lam_[k][k - 1];
        mpz_class B = exact_div(d_[k - 2] * d_[k] + l0 * l0, d_[k - 1]);
        for (int i = k + 1; i <= n_; ++i) {
            mpz_class t = lam_[i][k];
            lam_[i][k] = exact_div(d_[k] * lam_[i][k - 1] - l0 * t, d_[k - 1]);
            lam_[i][k - 1] = exact_div(B * t + l0 * lam_[i][k], d_[k]);
        }
        d_[k - 1] = B;
    }
};

inline mpz_class pow10_mpz(long e) {
    mpz_class n;
    mpz_ui_pow_ui(n.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return n;
}

inline mpz_class scaled_round(const BigReal& x, const mpz_class& N) {
    BigReal y = BigReal::with_precision(x.precision() + 16);
    mpfr_mul_z(y.raw(), x.raw(), N.get_mpz_t(), MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), y.raw(), MPFR_RNDN);
    return z;
}

// One relation search over a k x t matrix of values (t evaluation points,
// shared coefficient vector). Returns the validated relation or nullopt
// (nullopt only after the full-scale exclusion argument succeeds).
inline std::optional<IntegerRelation> relation_engine(
    const std::vector<std::vector<BigReal>>& points, // points[j][i] = x_i at point j
    const PrecisionContext& ctx, long long max_norm, const CancelToken* cancel) {
    const int t = static_cast<int>(points.size());
    const int k = static_cast<int>(points[0].size());
    const int D = ctx.decimal_digits;

    BigReal threshold("1e" + std::to_string(-D + 2 * k), ctx);

    auto validate = [&](const std::vector<long long>& c) -> std::optional<BigReal> {
        BigReal worst(0, ctx);
        for (int j = 0; j < t; ++j) {
            BigReal s(0, ctx);
            for (int i = 0; i < k; ++i) s = s + points[j][i] * c[i];
            BigReal a = abs_of(s);
            if (a > threshold) return std::nullopt;
            if (a > worst) worst = a;
        }
        return worst;
    };

    // scale schedule: cheap passes first, full precision last
    std::vector<long> scales;
    long full = std::max<long>(D - 10, 20);
    long small = std::max<long>(30, 2L * k + 20);
    if (k >= 16 && small > 30 && 30 < full) scales.push_back(30);
    if (small < full) scales.push_back(small);
    long mid = (small + full) / 2;
    if (mid > small + 10 && mid < full - 10) scales.push_back(mid);
    scales.push_back(full);

    for (std::size_t si = 0; si < scales.size(); ++si) {
        check_cancel(cancel);
        mpz_class N = pow10_mpz(scales[si]);
        std::vector<std::vector<mpz_class>> rows(
            static_cast<std::size_t>(k), std::vector<mpz_class>(static_cast<std::size_t>(k + t), 0));
        for (int i = 0; i < k; ++i) {
            rows[i][static_cast<std::size_t>(i)] = 1;
            for (int j = 0; j < t; ++j)
                rows[i][static_cast<std::size_t>(k + j)] = scaled_round(points[j][i], N);
        }
        IntLattice lat(std::move(rows), cancel);
        lat.reduce();

        // examine rows from shortest to longest
        std::vector<int> order(static_cast<std::size_t>(k));
        std::iota(order.begin(), order.end(), 1);
        std::vector<mpz_class> norms(static_cast<std::size_t>(k + 1));
        for (int i = 1; i <= k; ++i) norms[static_cast<std::size_t>(i)] = lat.row_norm_sq(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return norms[static_cast<std::size_t>(a)] <
                                             norms[static_cast<std::size_t>(b)]; });

        for (int idx : order) {
            const auto& row = lat.row(idx);
            std::vector<long long> c(static_cast<std::size_t>(k), 0);
            bool usable = true, any = false;
            for (int i = 0; i < k && usable; ++i) {
                const mpz_class& v = row[static_cast<std::size_t>(i)];
                if (!v.fits_slong_p()) { usable = false; break; }
                long long vi = v.get_si();
                if (vi > max_norm || vi < -max_norm) { usable = false; break; }
                c[static_cast<std::size_t>(i)] = vi;
                if (vi != 0) any = true;
            }
            if (!usable || !any) continue;
            // normalize before validating: content 1, first nonzero positive
            long long content = 0;
            for (long long v : c) content = std::gcd(content, v < 0 ? -v : v);
            if (content > 1)
                for (auto& v : c) v /= content;
            for (long long v : c) {
                if (v == 0) continue;
                if (v < 0)
                    for (auto& w : c) w = -w;
                break;
            }
            if (auto worst = validate(c))
                return IntegerRelation{std::move(c), *worst, max_norm};
        }

        if (scales[si] == full) {
            // no relation found; can the reduced basis exclude one? any
            // relation within max_norm would map to a lattice vector no
            // longer than `reachable`, and LLL's first vector is within
            // 2^((k-1)/2) of the lattice minimum.
            mpz_class reachable = mpz_class(static_cast<long>(max_norm)) *
                                      (static_cast<long>(std::sqrt(k)) + 1) +
                                  pow10_mpz(std::max(0, 2 * k - 10)) + 1;
            mpz_class b1 = lat.row_norm_sq(1);
            mpz_class needed = reachable * reachable;
            mpz_mul_2exp(needed.get_mpz_t(), needed.get_mpz_t(),
                         static_cast<mp_bitcnt_t>(k - 1));
            if (b1 > needed) return std::nullopt;
            throw precision_error(
                "insufficient precision to exclude relations with coefficients up to " +
                std::to_string(max_norm));
        }
    }
    return std::nullopt; // unreachable: the loop always ends at the full scale
}

} // namespace detail

inline std::optional<IntegerRelation> find_relation(const std::vector<BigReal>& values,
                                                    const PrecisionContext& ctx,
                                                    long long max_norm,
                                                    const CancelToken* cancel = nullptr) {
    if (values.size() < 2) throw domain_error("relation search needs at least two values");
    if (max_norm < 1) throw domain_error("max_norm must be positive");
    if (ctx.decimal_digits < 20 * static_cast<int>(values.size()))
        throw domain_error("relation search needs at least 20 digits per value");
    return detail::relation_engine({values}, ctx, max_norm, cancel);
}

// Recover the integer vector annihilating (Q^16, P^4 Q^14, P^4 Q^2, P^8)
// at every supplied q simultaneously (one scaled lattice column per point).
// Expected output, normalized: (1, -1, 8, -4).
inline IntegerRelation rediscover_modular_relation(const std::vector<QArgument>& q_list,
                                                   const PrecisionContext& ctx,
                                                   const CancelToken* cancel = nullptr) {
    if (q_list.empty()) throw domain_error("need at least one evaluation point");
    if (ctx.decimal_digits < 100) throw domain_error("rediscovery needs at least 100 digits");
    std::vector<std::vector<BigReal>> points;
    for (const auto& qa : q_list) {
        PQPair pq = pq_of(qa, PQVariant::root24, ctx);
        BigReal P4 = ipow(pq.P, 4);
        std::vector<BigReal> mono;
        mono.push_back(ipow(pq.Q, 16));
        mono.push_back(P4 * ipow(pq.Q, 14));
        mono.push_back(P4 * ipow(pq.Q, 2));
        mono.push_back(ipow(P4, 2));
        // balance the lattice: divide the point's monomials by the largest
        BigReal scale = abs_of(mono[0]);
        for (const auto& m : mono) {
            BigReal a = abs_of(m);
            if (a > scale) scale = a;
        }
        for (auto& m : mono) m = m / scale;
        points.push_back(std::move(mono));
    }
    auto rel = detail::relation_engine(points, ctx, 1000, cancel);
    if (!rel)
        throw verification_error(
            "falsification alarm: no integer relation among the quartic monomials");
    return *rel;
}

// Same search over the full monomial grid {P^(4i) Q^(2j) : 0 <= i <= i_max,
// 0 <= j <= j_max}, coefficients listed lexicographically by (i, j). Used to
// confirm the minimal relation is still picked out of a much larger basis.
inline IntegerRelation rediscover_in_monomial_grid(const std::vector<QArgument>& q_list,
                                                   int i_max, int j_max,
                                                   const PrecisionContext& ctx,
                                                   long long max_norm = 1000,
                                                   const CancelToken* cancel = nullptr) {
    if (q_list.empty()) throw domain_error("need at least one evaluation point");
    if (i_max < 0 || j_max < 0 || (i_max + 1) * (j_max + 1) < 2)
        throw domain_error("monomial grid too small");
    std::vector<std::vector<BigReal>> points;
    for (const auto& qa : q_list) {
        PQPair pq = pq_of(qa, PQVariant::root24, ctx);
        BigReal P4 = ipow(pq.P, 4);
        BigReal Q2 = ipow(pq.Q, 2);
        std::vector<BigReal> mono;
        for (int i = 0; i <= i_max; ++i)
            for (int j = 0; j <= j_max; ++j) mono.push_back(ipow(P4, i) * ipow(Q2, j));
        BigReal scale = abs_of(mono[0]);
        for (const auto& m : mono) {
            BigReal a = abs_of(m);
            if (a > scale) scale = a;
        }
        for (auto& m : mono) m = m / scale;
        points.push_back(std::move(mono));
    }
    auto rel = detail::relation_engine(points, ctx, max_norm, cancel);
    if (!rel)
        throw verification_error("falsification alarm: no integer relation in the monomial grid");
    return *rel;
}

// Lowest-degree integer polynomial (content 1, positive leading coefficient)
// annihilating x, searched degree by degree through the relation engine.
// Coefficients are returned in ascending power order.
inline std::optional<IntegerRelation> min_poly(const BigReal& x, int max_degree,
                                               const PrecisionContext& ctx,
                                               long long max_norm = 1000000,
                                               const CancelToken* cancel = nullptr) {
    if (max_degree < 1) throw domain_error("max_degree must be at least 1");
    if (ctx.decimal_digits < 30 * max_degree)
        throw domain_error("minimal-polynomial search needs 30 digits per degree");
    std::vector<BigReal> powers;
    powers.push_back(BigReal(1, ctx));
    powers.push_back(x);
    for (int d = 1; d <= max_degree; ++d) {
        if (d >= 2) powers.push_back(ipow(x, d));
        auto rel = detail::relation_engine({powers}, ctx, max_norm, cancel);
        if (!rel) continue;
        std::vector<long long>& c = rel->coefficients;
        while (!c.empty() && c.back() == 0) c.pop_back();
        if (c.size() < 2) continue; // constant-only vector cannot annihilate
        if (c.back() < 0)
            for (auto& v : c) v = -v;
        return rel;
    }
    return std::nullopt;
}

} // namespace qtheta
