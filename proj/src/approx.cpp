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

#include "polya/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polya {

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kComputational: return "I";
    case ModelKind::kLargeNetwork: return "IIa";
    case ModelKind::kSmallNetwork: return "IIb";
  }
  return "?";
}

KlSearch default_kl_search(double delta_i) {
  KlSearch s;
  s.delta_max = 10.0 * delta_i;
  return s;
}

double polya_kl(std::span<const double> marginal, double rho, double delta, std::size_t n) {
  const PolyaParams<double> params{rho, delta};
  std::vector<double> q(marginal.size());
  for (std::uint64_t a = 0; a < q.size(); ++a) q[a] = classical_polya_joint(params, a, n);
  return kl_rate(marginal, q, n);
}

Model1Fit model1_fit(std::span<const double> marginal, double rho, std::size_t n,
                     const KlSearch& search) {
  if (marginal.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::kSizeMismatch, "marginal must have 2^n entries");
  }
  double mass = 0;
  for (double p : marginal) mass += p;
  if (!(std::fabs(mass - 1.0) < 1e-6)) {
    throw Error(ErrorCode::kDegenerateMarginal, "marginal does not sum to 1");
  }
  if (!(search.delta_max >= 0) || search.grid_points < 2 || !(search.width > 0)) {
    throw Error(ErrorCode::kInvalidParameter, "invalid KL search configuration");
  }

  Model1Fit fit;
  auto objective = [&](double d) { return polya_kl(marginal, rho, d, n); };
  if (search.delta_max == 0) {
    fit.delta_hat = 0;
    fit.kl = objective(0);
    fit.grid = {0.0};
    fit.grid_kl = {fit.kl};
    return fit;
  }

  const int g = search.grid_points;
  std::size_t best = 0;
  for (int k = 0; k < g; ++k) {
    const double d = search.delta_max * k / (g - 1);
    fit.grid.push_back(d);
    fit.grid_kl.push_back(objective(d));
    if (fit.grid_kl.back() < fit.grid_kl[best]) best = fit.grid.size() - 1;
  }

  double lo = fit.grid[best == 0 ? 0 : best - 1];
  double hi = fit.grid[std::min<std::size_t>(best + 1, fit.grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > search.width) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double refined_kl = objective(refined);
  if (refined_kl <= fit.grid_kl[best]) {
    fit.delta_hat = refined;
    fit.kl = refined_kl;
  } else {
    fit.delta_hat = fit.grid[best];
    fit.kl = fit.grid_kl[best];
  }
  return fit;
}

ModelKind recommend_model(std::size_t node_count, std::size_t small_threshold) {
  return node_count <= small_threshold ? ModelKind::kSmallNetwork : ModelKind::kLargeNetwork;
}

NodeFitReport fit_node_from_marginal(const Network& net, const UrnInit<double>& init,
                                     double delta_mass, NodeId i, std::size_t n,
                                     std::span<const double> marginal,
                                     const std::optional<KlSearch>& search) {
  NodeFitReport r;
  r.node = i;
  r.rho = rho_for_node(net, init, i);
  const double delta_i = node_correlation(net, init, i, delta_mass);
  r.delta_prime = large_network_delta(delta_i, net.node_count());
  r.delta_star = small_network_delta(delta_i, net.node_count());
  const auto fit = model1_fit(marginal, r.rho, n, search ? *search : default_kl_search(delta_i));
  r.delta_hat = fit.delta_hat;
  r.kl = fit.kl;
  r.kl_prime = polya_kl(marginal, r.rho, r.delta_prime, n);
  r.kl_star = polya_kl(marginal, r.rho, r.delta_star, n);
  return r;
}

NodeFitReport fit_node(const Network& net, const UrnInit<double>& init, double delta_mass,
                       NodeId i, std::size_t n, std::size_t cap,
                       const std::optional<KlSearch>& search) {
  const auto marginal =
      node_process_distribution(net, init, DeltaSchedule<double>::constant(delta_mass), i, n, cap);
  return fit_node_from_marginal(net, init, delta_mass, i, n, marginal, search);
}

std::vector<NodeApproximation> approximations(const NodeFitReport& r) {
  return {
      {r.node, r.rho, r.delta_hat, ModelKind::kComputational, r.kl},
      {r.node, r.rho, r.delta_prime, ModelKind::kLargeNetwork, 0.0},
      {r.node, r.rho, r.delta_star, ModelKind::kSmallNetwork, 0.0},
  };
}

}  // namespace polya
