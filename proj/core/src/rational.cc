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

#include <cmath>
#include <stdexcept>

namespace attdist {

using boost::multiprecision::cpp_int;

std::optional<Rational> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  cpp_int numerator = 0;
  cpp_int denominator = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') return std::nullopt;
    seen_digit = true;
    numerator = numerator * 10 + (ch - '0');
    if (seen_point) denominator *= 10;
  }
  if (!seen_digit) return std::nullopt;
  return Rational(numerator, denominator);
}

Rational from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("from_double: non-finite value");
  }
  // A finite double is m * 2^e with |m| < 2^53.
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result(scaled);
  if (exponent > 0) {
    result *= Rational(cpp_int(1) << exponent);
  } else if (exponent < 0) {
    result /= Rational(cpp_int(1) << -exponent);
  }
  return result;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

cpp_int hundredths(const Rational& value) {
  Rational scaled = value * 100;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  cpp_int num = boost::multiprecision::numerator(scaled);
  cpp_int den = boost::multiprecision::denominator(scaled);
  cpp_int rounded = (2 * num + den) / (2 * den);
  return negative ? cpp_int(-rounded) : rounded;
}

std::string format_fixed2(const Rational& value) {
  cpp_int h = hundredths(value);
  bool negative = h < 0;
  if (negative) h = -h;
  cpp_int whole = h / 100;
  auto frac = static_cast<int>(h % 100);
  std::string out = negative ? "-" : "";
  out += whole.str();
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

}  // namespace attdist
