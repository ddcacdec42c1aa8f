// Copyright 2026 The homspasm Authors
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

#ifndef HOMSPASM_RATIONAL_HPP_
#define HOMSPASM_RATIONAL_HPP_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace homspasm {

// Exact non-negative counts and rational coefficients. cpp_rational keeps
// values normalized: positive denominator, coprime parts, zero as 0/1.
using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Count numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Count denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}
inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Count& c);
// Accepts "p", "-p" or "p/q"; throws ParseError.
Rational parse_rational(std::string_view text);
Count parse_count(std::string_view text);

// Nearest double; used only when encoding counts for output.
double to_double(const Rational& r);

}  // namespace homspasm

#endif  // HOMSPASM_RATIONAL_HPP_
