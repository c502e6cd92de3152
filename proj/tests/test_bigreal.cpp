#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qtheta/bigreal.hpp"
#include "qtheta/errors.hpp"

using namespace qtheta;

namespace {
const PrecisionContext kCtx(120);

// 60+ digit reference constants, each checked against the independent
// oracles below before being trusted anywhere else.
const char* kPi = "3.1415926535897932384626433832795028841971693993751058209749446";
const char* kE = "2.7182818284590452353602874713526624977572470936999595749669676";
const char* kFourthRoot2 = "1.1892071150027210667174999705604759152929720924638174130190022";
const char* kTwoPowNeg78 =
    "0.54525386633262882960350532788035398949635135927003356089283382";
} // namespace

TEST_CASE("field operations satisfy exact small-integer identities") {
    BigReal a(Rational(23, 2), kCtx);
    CHECK(a * 2 == BigReal(23, kCtx));
    CHECK((a + 1) - 1 == a);
    CHECK(a / a == BigReal(1, kCtx));
    CHECK((-a).sign() == -1);
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(a / BigReal(kCtx), domain_error);
    CHECK_THROWS_AS(a / 0, domain_error);
}

TEST_CASE("pi agrees with two independent constructions") {
    BigReal pi = const_pi(kCtx);
    BigReal agm = oracle::ref_pi_agm(kCtx);
    BigReal machin = oracle::ref_pi_machin(kCtx);
    BigReal frozen(kPi, kCtx);
    CHECK(agreement_digits(pi, agm) >= 117);
    CHECK(agreement_digits(pi, machin) >= 117);
    CHECK(agreement_digits(agm, machin) >= 117);
    CHECK(agreement_digits(pi, frozen) >= 60);
}

TEST_CASE("exp agrees with a Taylor-series oracle") {
    BigReal e = exp_of(BigReal(1, kCtx), kCtx);
    CHECK(agreement_digits(e, BigReal(kE, kCtx)) >= 60);
    for (const char* s : {"1", "-2.5", "0.37", "10", "-0.0001"}) {
        BigReal x(s, kCtx);
        CHECK(agreement_digits(exp_of(x, kCtx), oracle::ref_exp(x, kCtx)) >= 115);
    }
    CHECK(exp_of(BigReal(kCtx), kCtx) == BigReal(1, kCtx));
}

TEST_CASE("log inverts exp") {
    for (const char* s : {"0.001", "0.5", "1", "3", "12345.678"}) {
        BigReal x(s, kCtx);
        BigReal back = exp_of(log_of(x, kCtx), kCtx);
        CHECK(agreement_digits(back, x) >= 117);
    }
    CHECK(log_of(BigReal(1, kCtx), kCtx).is_zero());
    CHECK_THROWS_AS(log_of(BigReal(kCtx), kCtx), domain_error);
    CHECK_THROWS_AS(log_of(BigReal(-1, kCtx), kCtx), domain_error);
}

TEST_CASE("rational powers match Newton-iteration roots") {
    BigReal two(2, kCtx);
    CHECK(agreement_digits(pow_rational(two, 1, 4, kCtx), BigReal(kFourthRoot2, kCtx)) >= 60);
    CHECK(agreement_digits(pow_rational(two, -7, 8, kCtx), BigReal(kTwoPowNeg78, kCtx)) >= 60);

    BigReal a("3.7", kCtx);
    CHECK(agreement_digits(pow_rational(a, 1, 7, kCtx), oracle::ref_root(a, 7, kCtx)) >= 114);
    CHECK(agreement_digits(pow_rational(a, 3, 1, kCtx), a * a * a) >= 117);
    BigReal r24 = pow_rational(a, 2, 4, kCtx); // unreduced exponent = sqrt
    CHECK(agreement_digits(r24, sqrt_of(a)) >= 114);
    CHECK(pow_rational(a, 0, 3, kCtx) == BigReal(1, kCtx));

    CHECK_THROWS_AS(pow_rational(BigReal(-2, kCtx), 1, 3, kCtx), domain_error);
    CHECK_THROWS_AS(pow_rational(BigReal(kCtx), 1, 3, kCtx), domain_error);
    CHECK_THROWS_AS(pow_rational(two, 1, 0, kCtx), domain_error);
    CHECK_THROWS_AS(sqrt_of(BigReal(-1, kCtx)), domain_error);
}

TEST_CASE("integer powers handle negative exponents and reject 0^0") {
    BigReal x("1.5", kCtx);
    CHECK(agreement_digits(ipow(x, 10), oracle::ref_ipow(x, 10)) >= 117);
    CHECK(agreement_digits(ipow(x, -3) * ipow(x, 3), BigReal(1, kCtx)) >= 117);
    CHECK(ipow(x, 0) == BigReal(1, kCtx));
    CHECK_THROWS_AS(ipow(BigReal(kCtx), 0), domain_error);
    CHECK_THROWS_AS(ipow(BigReal(kCtx), -1), domain_error);
}

TEST_CASE("decimal rendering uses fixed notation near 1 and scientific far away") {
    CHECK(to_decimal(const_pi(PrecisionContext(30)), 10) == "3.141592654");
    CHECK(to_decimal(BigReal("1.0", kCtx), 3) == "1.00");
    CHECK(to_decimal(BigReal("0.125", kCtx), 2) == "0.12"); // round half to even
    CHECK(to_decimal(BigReal("12345.6", kCtx), 4) == "1.235e4");
    CHECK(to_decimal(BigReal("12345.6", kCtx), 6) == "12345.6");
    CHECK(to_decimal(BigReal("0.00001", kCtx), 3) == "0.0000100");
    CHECK(to_decimal(BigReal("-0.5", kCtx), 3) == "-0.500");
    CHECK(to_decimal(BigReal("1.5e-9", kCtx), 3) == "1.50e-9");
    CHECK(to_decimal(BigReal("6.02e23", kCtx), 3) == "6.02e23");
    CHECK(to_decimal(BigReal(kCtx), 3) == "0.00");
    CHECK(to_decimal(BigReal("0.999", kCtx), 2) == "1.0");
    CHECK_THROWS_AS(to_decimal(BigReal("1", PrecisionContext(10)), 400), precision_error);
    CHECK_THROWS_AS(to_decimal(BigReal("1", kCtx), 0), domain_error);
}

TEST_CASE("scientific residual formatting is deterministic") {
    CHECK(format_scientific(BigReal("0.000123456", kCtx)) == "1.23e-4");
    CHECK(format_scientific(BigReal("-42", kCtx)) == "-4.20e1");
    CHECK(format_scientific(BigReal(kCtx)) == "0");
}

TEST_CASE("agreement digits measure shared leading digits") {
    BigReal one("1.0", kCtx);
    BigReal close("1.00000000005", kCtx);
    int d = agreement_digits(one, close);
    CHECK(d >= 9);
    CHECK(d <= 11);
    CHECK(agreement_digits(one, -one) == 0);
    CHECK(agreement_digits(one, one) == one.decimal_capacity());
    CHECK(agreement_digits(BigReal(kCtx), BigReal(kCtx)) > 100);
    // tiny values hit the 1e-300 scale floor instead of dividing by zero
    CHECK(agreement_digits(BigReal(kCtx), BigReal("1e-301", kCtx)) >= 1);
}

TEST_CASE("three-way comparison uses an explicit tolerance") {
    BigReal tol("0.5", kCtx);
    CHECK(compare(BigReal(1, kCtx), BigReal(2, kCtx), tol) == Ordering::less);
    CHECK(compare(BigReal(2, kCtx), BigReal(1, kCtx), tol) == Ordering::greater);
    CHECK(compare(BigReal("1.0", kCtx), BigReal("1.1", kCtx), tol) ==
          Ordering::indistinguishable);
}

TEST_CASE("string construction rejects garbage") {
    CHECK_THROWS_AS(BigReal("not-a-number", kCtx), domain_error);
    CHECK_THROWS_AS(BigReal("1.2.3", kCtx), domain_error);
    CHECK(BigReal("-1.5e2", kCtx) == BigReal(-150, kCtx));
}
