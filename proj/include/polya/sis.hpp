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

#ifndef POLYA_SIS_HPP_
#define POLYA_SIS_HPP_

#include <cstddef>
#include <vector>

#include "polya/graph.hpp"

// Deterministic discrete-time SIS recursion and the spectral epidemic
// threshold.

namespace polya {

struct SisParams {
  double beta = 0;       // per-contact infection probability
  double delta_sis = 0;  // recovery probability
};

struct SisState {
  std::size_t time = 0;
  std::vector<double> probs;  // P_i(t)
};

// P_i(t+1) = P_i(t)(1 - δ) + (1 - P_i(t))(1 - Π_{j∈N_i}(1 - β P_j(t))).
// Throws Error{kParameterOutOfRange} unless β, δ ∈ [0,1] and every P_i ∈ [0,1].
SisState sis_step(const SisState& state, const Network& net, const SisParams& params);

struct SisTrajectory {
  std::vector<std::vector<double>> probs;  // probs[t][i], t = 0..horizon
  std::vector<double> mean;                // (1/N) Σ_i P_i(t)
};

SisTrajectory sis_run(const Network& net, std::vector<double> init_probs,
                      const SisParams& params, std::size_t horizon);

enum class ThresholdRegime { kDiesOut, kEndemic, kCritical };

const char* regime_name(ThresholdRegime r);

// δ > β λ_max: dies out; δ < β λ_max: endemic; |δ - β λ_max| <= tol: critical.
ThresholdRegime threshold_classify(double lambda_max, const SisParams& params,
                                   double tolerance = 1e-9);
ThresholdRegime threshold_classify(const Network& net, const SisParams& params,
                                   double tolerance = 1e-9);

}  // namespace polya

#endif  // POLYA_SIS_HPP_
