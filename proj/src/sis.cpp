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

#include "polya/sis.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "polya/errors.hpp"

namespace polya {

namespace {

void check_params(const SisParams& p) {
  auto unit = [](double x) { return x >= 0 && x <= 1; };
  if (!unit(p.beta) || !unit(p.delta_sis)) {
    throw Error(ErrorCode::kParameterOutOfRange, "beta and delta_sis must lie in [0, 1]");
  }
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

SisState sis_step(const SisState& state, const Network& net, const SisParams& params) {
  check_params(params);
  if (state.probs.size() != net.node_count()) {
    throw Error(ErrorCode::kSizeMismatch, "SIS state length differs from node count");
  }
  SisState next{state.time + 1, std::vector<double>(state.probs.size())};
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const double p = state.probs[i];
    if (!(p >= 0 && p <= 1)) {
      throw Error(ErrorCode::kParameterOutOfRange, "P_" + std::to_string(i) + " outside [0, 1]");
    }
    double escape = 1.0;
    for (NodeId j : net.neighbors(i)) escape *= 1.0 - params.beta * state.probs[j];
    next.probs[i] = p * (1.0 - params.delta_sis) + (1.0 - p) * (1.0 - escape);
  }
  return next;
}

SisTrajectory sis_run(const Network& net, std::vector<double> init_probs,
                      const SisParams& params, std::size_t horizon) {
  SisState state{0, std::move(init_probs)};
  SisTrajectory out;
  out.probs.reserve(horizon + 1);
  out.mean.reserve(horizon + 1);
  for (std::size_t t = 0;; ++t) {
    if (t == 0) {
      // Validates the initial state before recording it.
      (void)sis_step(state, net, params);
    }
    out.probs.push_back(state.probs);
    out.mean.push_back(mean_of(state.probs));
    if (t == horizon) break;
    state = sis_step(state, net, params);
  }
  return out;
}

const char* regime_name(ThresholdRegime r) {
  switch (r) {
    case ThresholdRegime::kDiesOut: return "dies_out";
    case ThresholdRegime::kEndemic: return "endemic";
    case ThresholdRegime::kCritical: return "critical";
  }
  return "unknown";
}

ThresholdRegime threshold_classify(double lambda_max, const SisParams& params, double tolerance) {
  check_params(params);
  const double gap = params.delta_sis - params.beta * lambda_max;
  if (std::fabs(gap) <= tolerance) return ThresholdRegime::kCritical;
  return gap > 0 ? ThresholdRegime::kDiesOut : ThresholdRegime::kEndemic;
}

ThresholdRegime threshold_classify(const Network& net, const SisParams& params, double tolerance) {
  return threshold_classify(largest_eigenvalue(net), params, tolerance);
}

}  // namespace polya
