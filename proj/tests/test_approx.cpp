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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "polya/approx.hpp"
#include "polya/rng.hpp"

namespace polya {
namespace {

using Q = Rational;

TEST(RhoForNode, Examples) {
  UrnInit<Q> k2{{Q(3), Q(1)}, {Q(1), Q(3)}};
  EXPECT_EQ(rho_for_node(complete_graph(2), k2, 0), Q(1, 2));
  UrnInit<Q> one{{Q(2)}, {Q(5)}};
  EXPECT_EQ(rho_for_node(complete_graph(1), one, 0), Q(2, 7));
  // star(3): hub 0 sees everyone, leaf 1 sees only the hub.
  UrnInit<Q> star{{Q(1), Q(3), Q(1)}, {Q(1), Q(1), Q(3)}};
  EXPECT_EQ(rho_for_node(star_graph(3), star, 0), Q(5, 10));
  EXPECT_EQ(rho_for_node(star_graph(3), star, 1), Q(4, 6));
  // Equals the initial super-urn proportion.
  const auto s = initial_state(star_graph(3), star, MemoryMode::infinite());
  for (NodeId i = 0; i < 3; ++i)
    EXPECT_EQ(rho_for_node(star_graph(3), star, i), super_urn_proportion(s, star_graph(3), i));
}

TEST(AnalyticDeltas, Examples) {
  UrnInit<Q> one{{Q(1)}, {Q(3)}};
  const Q d1 = node_correlation(complete_graph(1), one, 0, Q(2));
  EXPECT_EQ(d1, Q(1, 2));
  EXPECT_EQ(model2a_delta(complete_graph(1), one, 0, Q(2)), d1);
  EXPECT_EQ(model2b_delta(complete_graph(1), one, 0, Q(2)), d1);

  UrnInit<Q> k2{{Q(1), Q(1)}, {Q(1), Q(1)}};  // T̄ = 4
  EXPECT_EQ(node_correlation(complete_graph(2), k2, 0, Q(1)), Q(1, 2));
  EXPECT_EQ(model2a_delta(complete_graph(2), k2, 0, Q(1)), Q(1, 5));
  EXPECT_EQ(model2b_delta(complete_graph(2), k2, 0, Q(1)), Q(1, 9));
}

TEST(AnalyticDeltas, SmallModelNeverExceedsLargeModel) {
  for (std::size_t n = 1; n <= 50; n += 7) {
    for (double d : {0.0, 0.01, 0.5, 3.0, 40.0}) {
      const double a = large_network_delta(d, n), b = small_network_delta(d, n);
      EXPECT_GE(a, 0.0);
      EXPECT_GE(b, 0.0);
      EXPECT_TRUE(std::isfinite(a) && std::isfinite(b));
      if (n == 1 || d == 0) {
        EXPECT_DOUBLE_EQ(a, b);
      } else {
        EXPECT_LT(b, a);
      }
    }
  }
}

// ρ(ρ + δ')/(1 + δ') equals the complete-network (n, 1) joint.
TEST(AnalyticDeltas, PairMatchingIdentitySweep) {
  Rng rng(2024);
  for (int k = 0; k < 100; ++k) {
    const double rho = 0.01 + 0.98 * rng.uniform();
    const double delta = 5 * rng.uniform();
    const std::size_t n = 1 + rng.below(200);
    const double dp = large_network_delta(delta, n);
    EXPECT_NEAR(rho * (rho + dp) / (1 + dp), complete_n1_joint(rho, delta, n), 1e-12);
  }
  // Exactly, in rationals.
  for (long num = 1; num < 10; ++num) {
    const Q rho = Q(num) / 10, delta = Q(num) / 3;
    for (std::size_t n : {1u, 2u, 7u, 100u}) {
      const Q dp = large_network_delta(delta, n);
      EXPECT_EQ(Q(rho * (rho + dp) / (1 + dp)), complete_n1_joint(rho, delta, n));
    }
  }
}

TEST(Model1, SingleNodeRecoversExactDelta) {
  const auto init = UrnInit<double>::uniform(1, 1.0, 1.0);
  const auto r = fit_node(complete_graph(1), init, 1.0, 0, 8);
  EXPECT_NEAR(r.delta_hat, 0.5, 1e-6);
  EXPECT_LE(r.kl, 1e-9);
  EXPECT_NEAR(r.rho, 0.5, 0);
}

TEST(Model1, ZeroReinforcementGivesZeroDelta) {
  const auto init = UrnInit<double>::uniform(3, 1.0, 2.0);
  const auto m = node_process_distribution(complete_graph(3), init,
                                           DeltaSchedule<double>::constant(0.0), 0, 6);
  const auto fit = model1_fit(m, 1.0 / 3, 6, KlSearch{1.0, 200, 1e-6});
  EXPECT_LE(fit.delta_hat, 1e-6);
  EXPECT_LE(fit.kl, 1e-12);
}

TEST(Model1, OptimumBeatsGridAndAnalyticModels) {
  const Network net = barabasi_albert(6, 2, 5);
  UrnInit<double> init{{1, 2, 3, 1, 2, 1}, {2, 1, 1, 3, 2, 2}};
  for (NodeId i = 0; i < 6; ++i) {
    const auto m = node_process_distribution(net, init, DeltaSchedule<double>::constant(1.0), i, 3);
    const double rho = rho_for_node(net, init, i);
    const double di = node_correlation(net, init, i, 1.0);
    const auto fit = model1_fit(m, rho, 3, default_kl_search(di));
    for (double g : fit.grid_kl) EXPECT_LE(fit.kl, g + 1e-15);
    EXPECT_LE(fit.kl, polya_kl(m, rho, model2a_delta(net, init, i, 1.0), 3) * (1 + 1e-9) + 1e-15);
    EXPECT_LE(fit.kl, polya_kl(m, rho, model2b_delta(net, init, i, 1.0), 3) * (1 + 1e-9) + 1e-15);
    EXPECT_EQ(fit.grid.size(), 200u);
    EXPECT_DOUBLE_EQ(fit.grid.back(), 10 * di);
  }
}

TEST(Model1, RejectsDegenerateMarginal) {
  const std::vector<double> bad{0.5, 0.1, 0.1, 0.1};
  EXPECT_THROW(model1_fit(bad, 0.5, 2, KlSearch{}), Error);
}

TEST(ExactnessCheck, ZeroWhereAssumptionsHold) {
  UrnInit<Q> one{{Q(1)}, {Q(2)}};
  EXPECT_EQ(lemma3_consistency(complete_graph(1), one, Q(1), 0, 6), Q(0));
  UrnInit<Q> k3{{Q(1), Q(1), Q(2)}, {Q(1), Q(2), Q(1)}};
  EXPECT_EQ(lemma3_consistency(complete_graph(3), k3, Q(0), 1, 4), Q(0));
}

TEST(ExactnessCheck, PositiveOnSmallCompleteNetwork) {
  UrnInit<Q> k2{{Q(1), Q(1)}, {Q(1), Q(1)}};
  EXPECT_GT(lemma3_consistency(complete_graph(2), k2, Q(1), 0, 3), Q(0));
  EXPECT_THROW(lemma3_consistency(path_graph(3), UrnInit<Q>::uniform(3, Q(1), Q(1)), Q(1), 0, 2),
               Error);
}

TEST(Guidance, ThresholdSplitsModels) {
  EXPECT_EQ(recommend_model(5), ModelKind::kSmallNetwork);
  EXPECT_EQ(recommend_model(20), ModelKind::kSmallNetwork);
  EXPECT_EQ(recommend_model(21), ModelKind::kLargeNetwork);
  EXPECT_EQ(recommend_model(50, 100), ModelKind::kSmallNetwork);
  EXPECT_STREQ(model_kind_name(ModelKind::kLargeNetwork), "IIa");
}

TEST(FitReport, ApproximationsInModelOrder) {
  const auto r = fit_node(complete_graph(3), UrnInit<double>::uniform(3, 1.0, 2.0), 1.0, 0, 5);
  const auto a = approximations(r);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].kind, ModelKind::kComputational);
  EXPECT_DOUBLE_EQ(a[1].delta, r.delta_prime);
  EXPECT_DOUBLE_EQ(a[2].delta, r.delta_star);
  EXPECT_LE(r.kl, r.kl_prime);
  EXPECT_LE(r.kl, r.kl_star);
}

}  // namespace
}  // namespace polya
