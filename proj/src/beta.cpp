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

#include "polya/beta.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "polya/errors.hpp"

namespace polya {

namespace {

void check_params(const BetaParams& p) {
  if (!(p.alpha > 0) || !(p.beta > 0) || !std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw Error(ErrorCode::kDomainError, "Beta parameters must be positive and finite");
  }
}

// Continued fraction for I_x(a, b), valid (fast) for x < (a + 1)/(a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorCode::kNonConvergence, "incomplete beta continued fraction did not converge");
}

}  // namespace

BetaParams beta_from_polya(double rho, double delta) {
  if (!(rho > 0 && rho < 1)) throw Error(ErrorCode::kDomainError, "rho must lie in (0, 1)");
  if (!(delta > 0)) throw Error(ErrorCode::kDomainError, "Beta limit needs delta > 0");
  return {rho / delta, (1 - rho) / delta};
}

double log_beta_function(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_pdf(const BetaParams& p, double x) {
  check_params(p);
  if (!(x > 0 && x < 1)) throw Error(ErrorCode::kDomainError, "Beta pdf needs 0 < x < 1");
  return std::exp((p.alpha - 1) * std::log(x) + (p.beta - 1) * std::log1p(-x) -
                  log_beta_function(p.alpha, p.beta));
}

double regularized_incomplete_beta(double a, double b, double x) {
  check_params({a, b});
  if (!(x >= 0 && x <= 1)) throw Error(ErrorCode::kDomainError, "x must lie in [0, 1]");
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  const double log_front =
      a * std::log(x) + b * std::log1p(-x) - log_beta_function(a, b);
  const double front = std::exp(log_front);
  if (x < (a + 1) / (a + b + 2)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1 - x) / b;
}

double beta_cdf(const BetaParams& p, double x) {
  return regularized_incomplete_beta(p.alpha, p.beta, x);
}

}  // namespace polya
