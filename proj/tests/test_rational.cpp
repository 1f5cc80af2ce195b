#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bachflat/rational.hpp"

using bachflat::Rat;

TEST_CASE("construction and canonical form") {
  CHECK(Rat(6, 4) == Rat(3, 2));
  CHECK(Rat(-6, 4) == Rat(3, -2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(5).is_integer());
  CHECK_FALSE(Rat(5, 3).is_integer());
  CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("parse covers integers, fractions, decimals, exponents") {
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("-3/4") == Rat(-3, 4));
  CHECK(Rat::parse("2.61") == Rat(261, 100));
  CHECK(Rat::parse("1e-3") == Rat(1, 1000));
  CHECK(Rat::parse("-4.25e2") == Rat(-425));
  CHECK(Rat::parse(" 12/11 ") == Rat(12, 11));
  CHECK_THROWS(Rat::parse("abc"));
  CHECK_THROWS(Rat::parse(""));
}

TEST_CASE("arithmetic is exact") {
  Rat a(1, 3), b(1, 4);
  CHECK(a + b == Rat(7, 12));
  CHECK(a - b == Rat(1, 12));
  CHECK(a * b == Rat(1, 12));
  CHECK(a / b == Rat(4, 3));
  CHECK(-a == Rat(-1, 3));
  CHECK(a.inv() == Rat(3));
  CHECK_THROWS(Rat(0).inv());
}

TEST_CASE("pow handles negative exponents") {
  CHECK(Rat(2, 3).pow(3) == Rat(8, 27));
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK(Rat(5).pow(0) == Rat(1));
  CHECK(Rat::pow10(-3) == Rat(1, 1000));
  CHECK(Rat::pow10(2) == Rat(100));
}

TEST_CASE("ordering and sign") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 3) > Rat(-1, 2));
  CHECK(Rat(-7).sign() == -1);
  CHECK(Rat(0).sign() == 0);
  CHECK(Rat(-5, 2).abs() == Rat(5, 2));
  CHECK(bachflat::rat_min(Rat(1), Rat(2)) == Rat(1));
  CHECK(bachflat::rat_max(Rat(1), Rat(2)) == Rat(2));
}

TEST_CASE("floor and ceil") {
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(7, 2).ceil() == 4);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(-7, 2).ceil() == -3);
  CHECK(Rat(4).floor() == 4);
  CHECK(Rat(4).ceil() == 4);
}

TEST_CASE("decimal rendering rounds half away from zero") {
  CHECK(Rat(1, 3).to_decimal(4) == "0.3333");
  CHECK(Rat(2, 3).to_decimal(4) == "0.6667");
  CHECK(Rat(-1, 8).to_decimal(2) == "-0.13");
  CHECK(Rat(5).to_decimal(3) == "5.000");
  CHECK(Rat(1, 2).to_decimal(0) == "1");
}

TEST_CASE("string round trip") {
  CHECK(Rat(-3, 4).to_string() == "-3/4");
  CHECK(Rat(5).to_string() == "5");
  CHECK(Rat::parse(Rat(-22, 7).to_string()) == Rat(-22, 7));
}
