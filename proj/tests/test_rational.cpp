#include "doctest.h"
#include "plurinorm/rational.hpp"

#include <stdexcept>

using plurinorm::ExtRational;
using plurinorm::Rational;

TEST_SUITE("rational") {

TEST_CASE("construction reduces and normalizes sign") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("comparison is cross-multiplied, not floating") {
    // Denominators big enough that doubles would tie.
    Rational a(1000000000000000001LL, 3000000000000000000LL);
    Rational b(1, 3);
    CHECK(a > b);
    CHECK(Rational(5, 6) < Rational(6, 7));
    CHECK(Rational(-1, 2) < Rational(1, 1000000));
}

TEST_CASE("to_double and str") {
    CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
    CHECK(Rational(5, 6).str() == "5/6");
    CHECK(Rational(-7).str() == "-7");
    CHECK(Rational(0).str() == "0");
}

TEST_CASE("overflow is detected, not wrapped") {
    Rational big(4611686018427387904LL, 1);  // 2^62
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK_THROWS_AS(big + big, std::overflow_error);
}

TEST_CASE("extended rationals order with infinity on top") {
    ExtRational inf = ExtRational::infinity();
    ExtRational half{Rational(1, 2)};
    CHECK(inf.is_infinite());
    CHECK(half < inf);
    CHECK(inf == ExtRational::infinity());
    CHECK(inf.str() == "inf");
    CHECK(half.value() == Rational(1, 2));
    CHECK_THROWS_AS(ExtRational(Rational(-1, 2)), std::domain_error);
}

}  // TEST_SUITE
