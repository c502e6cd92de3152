#pragma once

#include <mpfr.h>

#include "qtheta/errors.hpp"

namespace qtheta {

// Requested accuracy for a computation: D correct significant decimal digits,
// carried in binary at W = ceil(D*log2(10)) + guard_bits.
struct PrecisionContext {
    int decimal_digits;
    int guard_bits;

    explicit PrecisionContext(int digits, int guard = 64)
        : decimal_digits(digits), guard_bits(guard) {
        if (digits < 5) throw domain_error("precision context requires at least 5 decimal digits");
        if (guard < 0) throw domain_error("guard bits must be nonnegative");
    }

    // ceil(D*log2(10)) computed in integers with a 12-place upper bound on
    // log2(10) = 3.321928094887..., so the result never undershoots.
    mpfr_prec_t working_precision() const {
        const unsigned long long scale = 1000000000000ULL;   // 10^12
        const unsigned long long log2_10 = 3321928094890ULL; // >= log2(10)*10^12
        unsigned long long d = static_cast<unsigned long long>(decimal_digits);
        unsigned long long bits = (d * log2_10 + scale - 1) / scale;
        return static_cast<mpfr_prec_t>(bits) + guard_bits;
    }

    PrecisionContext plus(int extra_digits) const {
        return PrecisionContext(decimal_digits + extra_digits, guard_bits);
    }
};

} // namespace qtheta
