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

#ifndef POLYA_APPROX_HPP_
#define POLYA_APPROX_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polya/contagion.hpp"
#include "polya/exact.hpp"
#include "polya/graph.hpp"

// Classical Polya approximations of a single node's draw process.

namespace polya {

enum class ModelKind { kComputational, kLargeNetwork, kSmallNetwork };

const char* model_kind_name(ModelKind kind);

struct NodeApproximation {
  NodeId node = 0;
  double rho = 0;
  double delta = 0;
  ModelKind kind = ModelKind::kComputational;
  double fit_kl = 0;  // computational model only
};

// ρ_i = Σ_{j∈N'_i} R_j / Σ_{j∈N'_i} T_j.
template <typename Scalar>
Scalar rho_for_node(const Network& net, const UrnInit<Scalar>& init, NodeId i) {
  Scalar red(0), total(0);
  for (NodeId j : net.closed_neighborhood(i)) {
    red += init.red[j];
    total += init.total(j);
  }
  return red / total;
}

// δ_i = N Δ / T̄_i.
template <typename Scalar>
Scalar node_correlation(const Network& net, const UrnInit<Scalar>& init, NodeId i,
                        const Scalar& delta_mass) {
  Scalar total(0);
  for (NodeId j : net.closed_neighborhood(i)) total += init.total(j);
  return Scalar(static_cast<long>(net.node_count())) * delta_mass / total;
}

// Large-network model: δ'_i = δ_i / (N + (N-1) δ_i).
template <typename Scalar>
Scalar large_network_delta(const Scalar& delta_i, std::size_t node_count) {
  const Scalar n(static_cast<long>(node_count));
  return delta_i / (n + (n - 1) * delta_i);
}

// Small-network model: δ*_i = δ_i / (N² + (N-1) δ_i).
template <typename Scalar>
Scalar small_network_delta(const Scalar& delta_i, std::size_t node_count) {
  const Scalar n(static_cast<long>(node_count));
  return delta_i / (n * n + (n - 1) * delta_i);
}

template <typename Scalar>
Scalar model2a_delta(const Network& net, const UrnInit<Scalar>& init, NodeId i,
                     const Scalar& delta_mass) {
  return large_network_delta(node_correlation(net, init, i, delta_mass), net.node_count());
}

template <typename Scalar>
Scalar model2b_delta(const Network& net, const UrnInit<Scalar>& init, NodeId i,
                     const Scalar& delta_mass) {
  return small_network_delta(node_correlation(net, init, i, delta_mass), net.node_count());
}

struct KlSearch {
  double delta_max = 1.0;
  int grid_points = 200;
  double width = 1e-6;  // final golden-section bracket width
};

// Default bracket [0, 10 δ_i].
KlSearch default_kl_search(double delta_i);

struct Model1Fit {
  double delta_hat = 0;
  double kl = 0;
  // The coarse grid and its KL values, kept for inspection.
  std::vector<double> grid;
  std::vector<double> grid_kl;
};

/// argmin over δ̃ in [0, delta_max] of kl_rate(P, Q_{ρ,δ̃}^{(n)}).
///
/// Evaluates a uniform grid, then refines around the best grid point with a
/// golden-section search on its neighbouring cells down to `width`. The
/// refinement assumes the objective is unimodal on that bracket; if it does
/// not improve on the grid minimum the grid minimum is returned.
/// `marginal` has 2^n entries, bit k = draw at step k + 1.
Model1Fit model1_fit(std::span<const double> marginal, double rho, std::size_t n,
                     const KlSearch& search);

// kl_rate(P, Q_{ρ,δ}^{(n)}) for a single δ.
double polya_kl(std::span<const double> marginal, double rho, double delta, std::size_t n);

/// Largest |P_{i,n}^{(n)}(a) - Q_{ρ_i,δ'_i}^{(n)}(a)| over a in {0,1}^n for a
/// complete network, by exhaustive enumeration of the network process.
/// Measures how far the process is from the exact-representation
/// assumptions. Throws Error{kHypothesisViolation} if the network is not
/// complete and Error{kCapExceeded} when N n exceeds the cap.
template <typename Scalar>
Scalar lemma3_consistency(const Network& net, const UrnInit<Scalar>& init,
                          const Scalar& delta_mass, NodeId i, std::size_t n,
                          std::size_t cap = kDefaultEnumerationCap) {
  if (classify(net) != Topology::kComplete) {
    throw Error(ErrorCode::kHypothesisViolation, "exact representation needs a complete network");
  }
  const auto table = enumerate_joint(net, init, DeltaSchedule<Scalar>::constant(delta_mass), n,
                                     MemoryMode::infinite(), cap);
  const auto process = node_marginal(table, i, 1, n);
  const PolyaParams<Scalar> params{rho_for_node(net, init, i),
                                   model2a_delta(net, init, i, delta_mass)};
  Scalar worst(0);
  for (std::uint64_t a = 0; a < process.size(); ++a) {
    Scalar gap = process[a] - classical_polya_joint(params, a, n);
    if (gap < 0) gap = -gap;
    if (gap > worst) worst = gap;
  }
  return worst;
}

// Model guidance: small networks (N <= threshold) favour the small-network
// model, larger ones the large-network model.
ModelKind recommend_model(std::size_t node_count, std::size_t small_threshold = 20);

struct NodeFitReport {
  NodeId node = 0;
  double rho = 0;
  double delta_hat = 0;
  double kl = 0;
  double delta_prime = 0;
  double delta_star = 0;
  double kl_prime = 0;
  double kl_star = 0;
};

/// Fits all three models for node i from its exact n-step law (lumped
/// recursion on complete networks, enumeration otherwise) under a constant
/// reinforcement mass Δ. Without `search` the bracket is default_kl_search(δ_i).
NodeFitReport fit_node(const Network& net, const UrnInit<double>& init, double delta_mass,
                       NodeId i, std::size_t n, std::size_t cap = kDefaultEnumerationCap,
                       const std::optional<KlSearch>& search = std::nullopt);

// Same, from an externally supplied law (for example a Monte Carlo estimate).
NodeFitReport fit_node_from_marginal(const Network& net, const UrnInit<double>& init,
                                     double delta_mass, NodeId i, std::size_t n,
                                     std::span<const double> marginal,
                                     const std::optional<KlSearch>& search = std::nullopt);

// The three fitted approximations in model order I, IIa, IIb.
std::vector<NodeApproximation> approximations(const NodeFitReport& report);

}  // namespace polya

#endif  // POLYA_APPROX_HPP_
