#include <catch2/catch_amalgamated.hpp>

#include "qtheta/errors.hpp"
#include "qtheta/precision.hpp"
#include "qtheta/rational.hpp"

using namespace qtheta;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, -7) == Rational(0, 1));
    CHECK(Rational(0, 5).den == 1);
    CHECK_THROWS_AS(Rational(1, 0), domain_error);
}

TEST_CASE("rational arithmetic and ordering") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0, 1), domain_error);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5, 2) < Rational(-2, 1));
    CHECK(Rational(7, 3).positive());
    CHECK_FALSE(Rational(-7, 3).positive());
    CHECK(Rational(14, 7).is_integer());
    CHECK_FALSE(Rational(15, 7).is_integer());
}

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("23") == Rational(23, 1));
    CHECK(Rational::parse("-7") == Rational(-7, 1));
    CHECK(Rational::parse("23/2") == Rational(23, 2));
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational(23, 2).to_string() == "23/2");
    CHECK(Rational(-4, 2).to_string() == "-2");
    CHECK_THROWS_AS(Rational::parse(""), domain_error);
    CHECK_THROWS_AS(Rational::parse("x/2"), domain_error);
    CHECK_THROWS_AS(Rational::parse("1/0"), domain_error);
    CHECK_THROWS_AS(Rational::parse("1.5"), domain_error);
}

TEST_CASE("invariant indices must be positive") {
    CHECK(InvariantIndex(14).n == Rational(14, 1));
    CHECK(InvariantIndex(1, 2).n == Rational(1, 2));
    CHECK_THROWS_AS(InvariantIndex(0), domain_error);
    CHECK_THROWS_AS(InvariantIndex(-3), domain_error);
    CHECK_THROWS_AS(InvariantIndex(Rational(-1, 2)), domain_error);
}

TEST_CASE("working precision covers the requested digits plus guard bits") {
    // ceil(D * log2(10)) + guard, computed without floating point
    CHECK(PrecisionContext(100).working_precision() == 333 + 64);
    CHECK(PrecisionContext(5).working_precision() == 17 + 64);
    CHECK(PrecisionContext(1000).working_precision() == 3322 + 64);
    CHECK(PrecisionContext(50, 0).working_precision() == 167);
    CHECK(PrecisionContext(60).plus(20).decimal_digits == 80);
    CHECK_THROWS_AS(PrecisionContext(4), domain_error);
    CHECK_THROWS_AS(PrecisionContext(50, -1), domain_error);
}

TEST_CASE("error types carry their messages") {
    parse_error pe("unexpected token", 17);
    CHECK(pe.position == 17);
    CHECK(std::string(pe.what()).find("offset 17") != std::string::npos);
    CHECK_THROWS_AS(throw precision_error("x"), error);
    CHECK_THROWS_AS(throw verification_error("x"), error);
}
