// Copyright 2026 The polya-net Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLYA_SCALAR_HPP_
#define POLYA_SCALAR_HPP_

#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace polya {

// Exact rational arithmetic backed by GMP. Expression templates are off so
// that generic code can use `auto` and mix freely with double-typed code.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename T>
inline constexpr bool kIsRational = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

// Parses "3", "-0.125", "1e-3", "2.5E2" or "7/3" exactly.
Rational parse_rational(std::string_view text);

// Parses a decimal string into the nearest double.
double parse_double(std::string_view text);

template <typename Scalar>
Scalar parse_scalar(std::string_view text) {
  if constexpr (kIsRational<Scalar>) {
    return parse_rational(text);
  } else {
    return parse_double(text);
  }
}

// Shortest-round-trip formatting: "p/q" (or "p") for rationals, %.17g for
// doubles.
std::string format_scalar(double x);
std::string format_scalar(const Rational& x);

// Converts between the two scalar kinds. Rational -> double rounds; double ->
// Rational is exact in the binary value.
template <typename To, typename From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (kIsRational<To>) {
    return Rational(x);
  } else {
    return to_double(x);
  }
}

}  // namespace polya

#endif  // POLYA_SCALAR_HPP_
