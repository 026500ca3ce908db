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

#ifndef POLYA_BETA_HPP_
#define POLYA_BETA_HPP_

namespace polya {

struct BetaParams {
  double alpha;
  double beta;
};

// Limit law of a classical Polya(ρ, δ) urn: Beta(ρ/δ, (1-ρ)/δ). Needs δ > 0.
BetaParams beta_from_polya(double rho, double delta);

double log_beta_function(double a, double b);

// Density on (0, 1); throws Error{kDomainError} outside.
double beta_pdf(const BetaParams& p, double x);

// Regularized incomplete beta I_x(a, b), continued fraction with modified
// Lentz evaluation (relative error around 1e-15 for moderate a, b).
double regularized_incomplete_beta(double a, double b, double x);

// CDF; x in [0, 1] (the endpoints map to 0 and 1).
double beta_cdf(const BetaParams& p, double x);

}  // namespace polya

#endif  // POLYA_BETA_HPP_
