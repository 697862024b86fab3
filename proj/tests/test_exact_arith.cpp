#include "doctest.h"

#include "tac/rational.hpp"

using tac::HalfInt;
using tac::Rational;

TEST_CASE("rational field arithmetic") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(-1, 8) * Rational(8) == Rational(-1));
  CHECK(Rational(16).inverse() == Rational(1, 16));
  CHECK(-Rational(2, 4) == Rational(-1, 2));
}

TEST_CASE("rational canonical form") {
  Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.to_string() == "-3/2");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(Rational(0).inverse(), tac::DivisionByZero);
  CHECK_THROWS_AS(Rational(1) / Rational(0), tac::DivisionByZero);
  CHECK_THROWS_AS(Rational(1, 0), tac::DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("1/0"), tac::DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("1/x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational powers") {
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2).pow(-2) == Rational(1, 4));
  CHECK(tac::pow2(-6) == Rational(1, 64));
  CHECK(Rational(5).pow(0) == Rational(1));
}

TEST_CASE("half integer exponents") {
  HalfInt h = HalfInt::from_twice(3);
  CHECK(h.to_string() == "3/2");
  CHECK((h + HalfInt::from_twice(1)).to_string() == "2");
  CHECK(HalfInt::integer(-1).to_string() == "-1");
  CHECK(HalfInt::from_twice(1) < HalfInt::integer(1));
  CHECK(std::hash<HalfInt>{}(h) == std::hash<HalfInt>{}(HalfInt::from_twice(3)));
}
