#include <catch2/catch_amalgamated.hpp>

#include "l2stokes/rational.hpp"

using l2stokes::Rational;

TEST_CASE("rational normalization and accessors") {
    Rational r(6, 4);
    CHECK(r.numerator() == 3);
    CHECK(r.denominator() == 2);
    CHECK_FALSE(r.is_integer());
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(8, 4).is_integer());
    CHECK(Rational(8, 4).as_integer() == 2);
    CHECK_THROWS_AS(Rational(1, 0), l2stokes::parameter_error);
    CHECK_THROWS_AS(Rational(3, 2).as_integer(), l2stokes::parameter_error);
}

TEST_CASE("rational arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), l2stokes::parameter_error);

    // no drift over many operations
    Rational sum(0);
    for (int i = 0; i < 300; ++i) sum = sum + Rational(1, 3);
    CHECK(sum == Rational(100));
}

TEST_CASE("rational ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 7) == Rational(1));
    CHECK(Rational(3, 2) >= Rational(3, 2));
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("2") == Rational(2));
    CHECK(Rational::parse("-7/21") == Rational(-1, 3));
    CHECK(Rational::parse("1.5") == Rational(3, 2));
    CHECK(Rational::parse("-0.25") == Rational(-1, 4));
    CHECK(Rational::parse("0.5") == Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse(""), l2stokes::parameter_error);
    CHECK_THROWS_AS(Rational::parse("x"), l2stokes::parameter_error);
    CHECK_THROWS_AS(Rational::parse("1/0"), l2stokes::parameter_error);
    CHECK_THROWS_AS(Rational::parse("1//2"), l2stokes::parameter_error);
}

TEST_CASE("rational formatting round-trips") {
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(-5).str() == "-5");
    CHECK(Rational::parse(Rational(22, 7).str()) == Rational(22, 7));
    CHECK(Rational(3, 2).to_double() == 1.5);
}
