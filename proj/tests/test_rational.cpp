#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "fairdiv/rational.hpp"

using fairdiv::Rational;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(-6, 8) == Rational(-3, 4));
  CHECK(Rational(6, -8) == Rational(-3, 4));
  CHECK(Rational(-6, -8) == Rational(3, 4));
  CHECK(Rational(0, -5) == Rational(0));
  CHECK(Rational(0).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);

  // Repeated halving then summing back must be lossless.
  Rational sum;
  Rational piece(1);
  for (int i = 0; i < 60; ++i) {
    piece /= 2;
    sum += piece;
  }
  CHECK(sum == Rational(1) - fairdiv::pow2(-60));
}

TEST_CASE("comparisons use cross multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(7, 8) > Rational(13, 16));
  CHECK(Rational(5, 10) <= Rational(1, 2));
  CHECK(Rational(5, 10) >= Rational(1, 2));
}

TEST_CASE("parse and format round-trip") {
  CHECK(Rational::parse("27/16") == Rational(27, 16));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("6/8") == Rational(3, 4));

  CHECK(Rational(27, 16).format() == "27/16");
  CHECK(Rational(-3, 4).format() == "-3/4");
  CHECK(Rational(5).format() == "5/1");
  CHECK(Rational(0).format() == "0/1");

  for (const Rational& r :
       {Rational(1197, 640), Rational(-45117, 2560), Rational(0), Rational(12)}) {
    CHECK(Rational::parse(r.format()) == r);
  }

  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("/2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("pow2 handles both signs") {
  CHECK(fairdiv::pow2(0) == Rational(1));
  CHECK(fairdiv::pow2(4) == Rational(16));
  CHECK(fairdiv::pow2(-4) == Rational(1, 16));
  CHECK(fairdiv::pow2(10) * fairdiv::pow2(-10) == Rational(1));
  // Far beyond 64-bit range; exactness must survive.
  CHECK(fairdiv::pow2(100) * fairdiv::pow2(-100) == Rational(1));
}

TEST_CASE("predicates and helpers") {
  CHECK(Rational(0).is_zero());
  CHECK(Rational(-1, 2).is_negative());
  CHECK(Rational(1, 2).is_positive());
  CHECK(Rational(4, 2).is_integer());
  CHECK_FALSE(Rational(1, 2).is_integer());
  CHECK(fairdiv::min(Rational(1, 3), Rational(1, 2)) == Rational(1, 3));
  CHECK(fairdiv::max(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
  CHECK(fairdiv::abs(Rational(-7, 2)) == Rational(7, 2));

  std::ostringstream os;
  os << Rational(27, 16);
  CHECK(os.str() == "27/16");
}

TEST_CASE("to_double is a faithful approximation") {
  CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(Rational(1197, 640).to_double() == doctest::Approx(1.8703125));
  CHECK(Rational(-1, 3).to_double() == doctest::Approx(-1.0 / 3.0));
}
