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

#include "polya/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "polya/errors.hpp"

namespace polya {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kHypothesisViolation: return "HypothesisViolation";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kDegenerateMarginal: return "DegenerateMarginal";
    case ErrorCode::kParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::kParseError, "not a number: '" + std::string(text) + "'");
}

boost::multiprecision::mpz_int parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) bad_number(whole);
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) bad_number(whole);
  }
  // A leading zero would select octal in the GMP string parser.
  const auto first = std::min(digits.find_first_not_of('0'), digits.size() - 1);
  return boost::multiprecision::mpz_int(std::string(digits.substr(first)));
}

Rational ten_pow(long e) {
  boost::multiprecision::mpz_int p = boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                                                static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Rational(boost::multiprecision::mpz_int(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad_number(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::string_view body = s;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) bad_number(text);
    body = body.substr(0, e);
  }

  std::string digits;
  long frac_len = 0;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    digits = std::string(body);
  }

  Rational value(parse_digits(digits, text));
  value *= ten_pow(exponent - frac_len);
  return negative ? Rational(-value) : value;
}

double parse_double(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.find('/') != std::string_view::npos) return to_double(parse_rational(s));
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) bad_number(text);
  return v;
}

std::string format_scalar(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_scalar(const Rational& x) { return x.str(); }

}  // namespace polya
