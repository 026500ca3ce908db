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

#include "polya/exact.hpp"

#include <bit>
#include <cmath>
#include <ostream>

namespace polya {

double classical_polya_joint_gamma(double rho, double delta, std::uint64_t bits, std::size_t n) {
  detail::check_rho(rho);
  detail::check_delta(delta);
  const auto k = static_cast<double>(std::popcount(bits & ((n >= 64) ? ~0ULL : ((1ULL << n) - 1))));
  const double nn = static_cast<double>(n);
  if (delta == 0) return std::pow(rho, k) * std::pow(1 - rho, nn - k);
  const double a = rho / delta;
  const double b = (1 - rho) / delta;
  const double c = 1 / delta;
  return std::exp(std::lgamma(c) + std::lgamma(a + k) + std::lgamma(b + nn - k) -
                  std::lgamma(c + nn) - std::lgamma(a) - std::lgamma(b));
}

double kl_rate(std::span<const double> p, std::span<const double> q, std::size_t n) {
  if (p.size() != q.size()) throw Error(ErrorCode::kSizeMismatch, "KL inputs differ in length");
  if (n == 0) throw Error(ErrorCode::kInvalidParameter, "KL rate needs n >= 1");
  double sum = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] <= 0) continue;
    if (!(q[a] > 0)) {
      throw Error(ErrorCode::kSupportMismatch,
                  "Q vanishes at assignment " + std::to_string(a) + " where P > 0");
    }
    sum += p[a] * std::log(p[a] / q[a]);
  }
  // Rounding can leave a tiny negative value when P == Q.
  return std::max(0.0, sum / static_cast<double>(n));
}

namespace {

template <typename Scalar>
void write_header(std::ostream& out, const JointTable<Scalar>& table) {
  for (NodeId i = 0; i < table.node_count(); ++i)
    for (std::size_t t = 1; t <= table.horizon(); ++t)
      out << "a_{" << i + 1 << ',' << t << "},";
}

template <typename Scalar>
void write_bits(std::ostream& out, const JointTable<Scalar>& table, std::uint64_t a) {
  for (NodeId i = 0; i < table.node_count(); ++i)
    for (std::size_t t = 1; t <= table.horizon(); ++t) out << (table.draw(a, i, t) ? 1 : 0) << ',';
}

}  // namespace

void write_joint_table_csv(std::ostream& out, const JointTable<Rational>& table) {
  write_header(out, table);
  out << "p_num,p_den\n";
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    write_bits(out, table, a);
    out << numerator(table[a]) << ',' << denominator(table[a]) << '\n';
  }
}

void write_joint_table_csv(std::ostream& out, const JointTable<double>& table) {
  write_header(out, table);
  out << "p\n";
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    write_bits(out, table, a);
    out << format_scalar(table[a]) << '\n';
  }
}

}  // namespace polya
