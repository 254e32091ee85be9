// Copyright 2026 The attdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "attdist/rational.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace attdist {
namespace {

TEST(ParseDecimal, AcceptsPlainDecimals) {
  EXPECT_EQ(*parse_decimal("20"), Rational(20));
  EXPECT_EQ(*parse_decimal("13.33"), Rational(1333, 100));
  EXPECT_EQ(*parse_decimal("0.5"), Rational(1, 2));
  EXPECT_EQ(*parse_decimal(".5"), Rational(1, 2));
  EXPECT_EQ(*parse_decimal("7."), Rational(7));
  EXPECT_EQ(*parse_decimal("000.250"), Rational(1, 4));
}

TEST(ParseDecimal, RejectsEverythingElse) {
  for (const char* bad : {"", ".", "-1", "+1", "1e3", "1.2.3", " 1", "1 ",
                          "abc", "0x10", "1,5", "nan", "inf"}) {
    EXPECT_FALSE(parse_decimal(bad).has_value()) << bad;
  }
}

TEST(FormatFixed2, RoundsHalfAwayFromZero) {
  EXPECT_EQ(format_fixed2(Rational(40, 3)), "13.33");
  EXPECT_EQ(format_fixed2(Rational(1, 8)), "0.13");
  EXPECT_EQ(format_fixed2(Rational(2, 3)), "0.67");
  EXPECT_EQ(format_fixed2(Rational(1, 200)), "0.01");
  EXPECT_EQ(format_fixed2(Rational(1, 201)), "0.00");
  EXPECT_EQ(format_fixed2(Rational(0)), "0.00");
  EXPECT_EQ(format_fixed2(Rational(20)), "20.00");
  EXPECT_EQ(format_fixed2(Rational(4, 3)), "1.33");
  EXPECT_EQ(format_fixed2(Rational(12345678901LL, 10)), "1234567890.10");
}

TEST(FormatFixed2, Hundredths) {
  EXPECT_EQ(hundredths(Rational(40, 3)), 1333);
  EXPECT_EQ(hundredths(Rational(1, 200)), 1);
  EXPECT_EQ(hundredths(Rational(0)), 0);
}

TEST(FromDouble, IsExact) {
  EXPECT_EQ(from_double(0.5), Rational(1, 2));
  EXPECT_EQ(from_double(-3.25), Rational(-13, 4));
  EXPECT_NE(from_double(0.1), Rational(1, 10));
  EXPECT_EQ(from_double(0.0), Rational(0));
  EXPECT_THROW(from_double(std::nan("")), std::invalid_argument);
  EXPECT_THROW(from_double(INFINITY), std::invalid_argument);
}

TEST(FromDouble, RoundTripsThroughToDouble) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double x = dist(rng);
    EXPECT_EQ(to_double(from_double(x)), x);
  }
  EXPECT_EQ(to_double(from_double(5e-324)), 5e-324);
  EXPECT_EQ(to_double(from_double(1.7976931348623157e308)),
            1.7976931348623157e308);
}

TEST(FormatFixed2, ParsesBackToTheRoundedValue) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Rational r(static_cast<long>(rng() % 100000),
               static_cast<long>(rng() % 999 + 1));
    Rational back = *parse_decimal(format_fixed2(r));
    EXPECT_LE(abs(back - r), Rational(1, 200));
    EXPECT_EQ(back, Rational(hundredths(r), 100));
  }
}

}  // namespace
}  // namespace attdist
