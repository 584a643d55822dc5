#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "plflow/dyadic.hpp"

using namespace plflow;

TEST_CASE("canonical form: numerator odd or exponent zero") {
  Dyadic a(Int(6), 3);  // 6/8 = 3/4
  CHECK(a.numerator() == 3);
  CHECK(a.exponent() == 2);
  Dyadic z(Int(0), 7);
  CHECK(z.numerator() == 0);
  CHECK(z.exponent() == 0);
  Dyadic i(Int(-8), 2);  // -2
  CHECK(i.numerator() == -2);
  CHECK(i.exponent() == 0);
}

TEST_CASE("arithmetic is exact and closed") {
  Dyadic a(Int(3), 2);   // 3/4
  Dyadic b(Int(5), 4);   // 5/16
  CHECK((a + b) == Dyadic(Int(17), 4));
  CHECK((a - b) == Dyadic(Int(7), 4));
  CHECK((a * b) == Dyadic(Int(15), 6));
  CHECK(a.mul_pow2(3) == Dyadic(Int(6), 0));
  CHECK(a.mul_pow2(-2) == Dyadic(Int(3), 4));
  CHECK(a + (-a) == Dyadic(0));
}

TEST_CASE("comparison and floor/ceil") {
  Dyadic a(Int(3), 2), b(Int(13), 4);
  CHECK(a < b);
  CHECK(Dyadic(Int(5), 2).floor() == 1);
  CHECK(Dyadic(Int(5), 2).ceil() == 2);
  CHECK(Dyadic(Int(-5), 2).floor() == -2);
  CHECK(Dyadic(Int(-5), 2).ceil() == -1);
  CHECK(Dyadic(Int(8), 0).floor() == 8);
}

TEST_CASE("string round trip") {
  for (const char* s : {"3/2^2", "-7/2^5", "0/2^0", "12/2^0"}) {
    Dyadic d = Dyadic::parse(s);
    CHECK(Dyadic::parse(d.str()) == d);
  }
  CHECK(Dyadic::parse("5") == Dyadic(5));
  CHECK_THROWS_AS(Dyadic::parse("1/3"), validation_error);
  CHECK_THROWS_AS(Dyadic::parse("x/2^1"), validation_error);
}

TEST_CASE("rational bridge") {
  Rat r(-9, 8);
  Dyadic d = Dyadic::from_rational(r);
  CHECK(d.to_rational() == r);
  CHECK_THROWS_AS(Dyadic::from_rational(Rat(1, 3)), validation_error);
  CHECK(is_dyadic(Rat(7, 64)));
  CHECK(!is_dyadic(Rat(7, 48)));
  CHECK(is_pow2_rational(Rat(1, 4)));
  CHECK(is_pow2_rational(Rat(8)));
  CHECK(!is_pow2_rational(Rat(3, 2)));
  CHECK(!is_pow2_rational(Rat(-2)));
}

TEST_CASE("decimal rendering fixed to 12 digits") {
  CHECK(decimal_string(Rat(1, 2)) == "0.500000000000");
  CHECK(decimal_string(Rat(-5, 4)) == "-1.250000000000");
  CHECK(decimal_string(Rat(1, 3), 6) == "0.333333");
}

TEST_CASE("property: group laws of addition on random dyadics") {
  std::mt19937_64 rng(12345);
  auto rnd = [&]() {
    long long n = static_cast<long long>(rng() % 2001) - 1000;
    unsigned e = static_cast<unsigned>(rng() % 12);
    return Dyadic(Int(n), e);
  };
  for (int i = 0; i < 200; ++i) {
    Dyadic a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK(a + Dyadic(0) == a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}
