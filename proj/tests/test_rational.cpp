#include "mincode/rational.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace mincode {
namespace {

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-1/3"), Rational(-1, 3));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "1/-2", "a", "1.5", "1/", "/2", " 1", "1//2", "+-1"})
    EXPECT_THROW(parse_rational(bad), RationalFormatError) << bad;
}

TEST(Rational, PrintsCanonicalForm) {
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(to_string(Rational(-5, 10)), "-1/2");
  EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Rational, RoundTripsThroughText) {
  for (int p = -12; p <= 12; ++p)
    for (int q = 1; q <= 7; ++q) EXPECT_EQ(parse_rational(to_string(Rational(p, q))), Rational(p, q));
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(floor_of(Rational(7, 2)), Integer(3));
  EXPECT_EQ(ceil_of(Rational(7, 2)), Integer(4));
  EXPECT_EQ(floor_of(Rational(-7, 2)), Integer(-4));
  EXPECT_EQ(ceil_of(Rational(-7, 2)), Integer(-3));
  EXPECT_EQ(floor_of(Rational(5)), Integer(5));
  EXPECT_TRUE(is_integral(Rational(8, 4)));
  EXPECT_FALSE(is_integral(Rational(1, 3)));
}

TEST(Rational, DenominatorLcm) {
  const std::vector<Rational> values{Rational(1, 2), Rational(2, 3), Rational(5), Rational(3, 4)};
  EXPECT_EQ(denominator_lcm(values), Integer(12));
  EXPECT_EQ(denominator_lcm(std::vector<Rational>{}), Integer(1));
  EXPECT_EQ(lcm(Integer(4), Integer(6)), Integer(12));
}

}  // namespace
}  // namespace mincode
