// Copyright 2026 The Blotto Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOTTO_RATIONAL_HPP_
#define BLOTTO_RATIONAL_HPP_

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "blotto/errors.hpp"

namespace blotto {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxDecimalDigits = 12;

inline BigInt numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline BigInt denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

// Lowest-terms "num/den" rendering; integers render with denominator 1.
inline std::string to_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace detail {

inline BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(text));
}

}  // namespace detail

// Parses "p/q", an integer, or a decimal with at most 12 fractional digits.
// Decimals are converted digit-by-digit, never through floating point.
inline Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = detail::parse_integer(text.substr(0, slash), whole);
    BigInt den = detail::parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    if (frac_part.size() > static_cast<size_t>(kMaxDecimalDigits)) {
      throw ParseError("decimal '" + std::string(whole) + "' has more than 12 fractional digits");
    }
    BigInt ip = int_part.empty() ? BigInt(0) : detail::parse_integer(int_part, whole);
    BigInt fp = frac_part.empty() ? BigInt(0) : detail::parse_integer(frac_part, whole);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    value = Rational(ip * scale + fp, scale);
  } else {
    value = Rational(detail::parse_integer(text, whole));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace blotto

#endif  // BLOTTO_RATIONAL_HPP_
