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

#ifndef ATTDIST_RATIONAL_H_
#define ATTDIST_RATIONAL_H_

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace attdist {

// Arbitrary-precision rational. Harmonic sums of many path lengths blow
// through 64-bit denominators quickly.
using Rational = boost::multiprecision::cpp_rational;

// Parses a non-negative plain decimal ("20", "13.33", "0.5"). No sign, no
// exponent. Returns nullopt on anything else.
std::optional<Rational> parse_decimal(std::string_view text);

// Exact conversion of a finite double.
Rational from_double(double value);

double to_double(const Rational& value);

// Rounds half away from zero to two fractional digits: 40/3 -> "13.33",
// 1/8 -> "0.13".
std::string format_fixed2(const Rational& value);

// Same rounding, returned as an integer count of hundredths.
boost::multiprecision::cpp_int hundredths(const Rational& value);

}  // namespace attdist

#endif  // ATTDIST_RATIONAL_H_
