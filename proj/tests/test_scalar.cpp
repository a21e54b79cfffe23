#include <doctest.h>

#include "ckb/scalar.hpp"

using namespace ckb;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("1/3") == Rat(1, 3));
  CHECK(parse_rational("-2/6") == Rat(-1, 3));
  CHECK(parse_rational("7") == Rat(7));
  CHECK(rational_str(Rat(2, 6)) == "1/3");
  CHECK(rational_str(Rat(4)) == "4");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("scalar arithmetic stays exact until a float enters") {
  Scalar a(Rat(1, 3)), b(Rat(1, 6));
  Scalar c = a + b;
  CHECK(c.exact());
  CHECK(c.rat() == Rat(1, 2));
  Scalar d = c * Scalar::approx(2.0);
  CHECK(!d.exact());
  CHECK(d.as_double() == doctest::Approx(1.0));
  CHECK((a - a).is_exact_zero());
  CHECK_THROWS_AS(a / Scalar(0), DomainError);
}

TEST_CASE("scalar comparison semantics") {
  CHECK(Scalar(Rat(1, 3)).same(Scalar(Rat(2, 6))));
  CHECK(!Scalar(Rat(1, 3)).same(Scalar(Rat(1, 3) + Rat(1, 1000000000000))));
  CHECK(Scalar::approx(0.5).same(Scalar(Rat(1, 2)), 1e-12));
}

TEST_CASE("exact square roots of perfect rational squares") {
  CHECK(sqrt_scalar(Scalar(Rat(9, 4))).exact());
  CHECK(sqrt_scalar(Scalar(Rat(9, 4))).rat() == Rat(3, 2));
  CHECK(!sqrt_scalar(Scalar(Rat(1, 2))).exact());
  CHECK(sqrt_scalar(Scalar(Rat(1, 2))).as_double() == doctest::Approx(0.7071067811865476));
}

TEST_CASE("parse_scalar distinguishes rational and decimal strings") {
  CHECK(parse_scalar("1/3").exact());
  CHECK(parse_scalar("5").exact());
  CHECK(!parse_scalar("0.25").exact());
}
