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
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "polya/exact.hpp"

#include "oracles.hpp"

namespace polya {
namespace {

TEST(JointProbability, Examples) {
  const Network k2 = complete_graph(2);
  const auto init = urns({1, 1}, {1, 1});
  const auto sched = DeltaSchedule<Q>::constant(Q(1));
  EXPECT_EQ(joint_probability(k2, init, sched, DrawRecord{{1, 1}}), Q(1, 4));
  EXPECT_EQ(joint_probability(k2, init, sched, DrawRecord{{1, 1}, {1, 1}}), Q(1, 9));
  const auto t1 = enumerate_joint(k2, init, sched, 1);
  for (std::uint64_t a = 0; a < 4; ++a) EXPECT_EQ(t1[a], Q(1, 4));
}

TEST(JointProbability, ZeroReinforcementIsBernoulliProduct) {
  const Network path = path_graph(3);
  const auto init = urns({1, 1, 1}, {1, 1, 3});
  const auto sched = DeltaSchedule<Q>::constant(Q(0));
  const std::vector<Q> s{Q(1, 2), Q(3, 8), Q(1, 3)};
  const DrawRecord rec{{1, 0, 1}, {0, 0, 1}};
  Q expect(1);
  for (const auto& d : rec)
    for (NodeId i = 0; i < 3; ++i) expect *= d[i] ? s[i] : 1 - s[i];
  EXPECT_EQ(joint_probability(path, init, sched, rec), expect);
}

TEST(EnumerateJoint, MatchesBruteForceOracle) {
  struct Case {
    Network net;
    UrnInit<Q> init;
    Q dr, db;
    std::size_t horizon;
  };
  const std::vector<Case> cases{
      {complete_graph(2), urns({1, 2}, {2, 1}), Q(1), Q(1), 3},
      {complete_graph(3), urns({1, 1, 2}, {1, 3, 1}), Q(2), Q(1, 2), 3},
      {path_graph(3), urns({1, 1, 1}, {1, 1, 3}), Q(1), Q(3), 3},
      {cycle_graph(4), urns({2, 1, 1, 3}, {1, 1, 2, 1}), Q(1, 3), Q(1), 3},
      {star_graph(4), urns({1, 1, 1, 1}, {1, 2, 3, 4}), Q(5), Q(2), 2},
  };
  for (const auto& c : cases) {
    const auto table =
        enumerate_joint(c.net, c.init, DeltaSchedule<Q>::constant(c.dr, c.db), c.horizon);
    for (std::uint64_t a = 0; a < table.size(); ++a) {
      ASSERT_EQ(table[a], oracle_probability(c.net, c.init, c.dr, c.db, a, c.horizon));
      ASSERT_GT(table[a], Q(0));
    }
    EXPECT_EQ(table.total(), Q(1));
  }
}

TEST(EnumerateJoint, ChainRuleAgreesWithConditionals) {
  const Network net = star_graph(3);
  const auto init = urns({1, 2, 1}, {2, 1, 1});
  const auto sched = DeltaSchedule<Q>::constant(Q(1), Q(2));
  const DrawRecord rec{{1, 0, 1}, {1, 1, 0}, {0, 1, 1}};
  Q p(1);
  auto s = initial_state(net, init, MemoryMode::infinite());
  for (const auto& d : rec) {
    const auto c = conditional_draw_probabilities(s, net);
    for (NodeId i = 0; i < 3; ++i) p *= d[i] ? c[i] : 1 - c[i];
    s = apply_draws(s, net, d, sched);
  }
  EXPECT_EQ(joint_probability(net, init, sched, rec), p);
  const auto table = enumerate_joint(net, init, sched, 3);
  EXPECT_EQ(table[table.index_of(rec)], p);
}

TEST(EnumerateJoint, CapExceeded) {
  const Network net = complete_graph(5);
  EXPECT_THROW(enumerate_joint(net, UrnInit<double>::uniform(5, 1, 1),
                               DeltaSchedule<double>::constant(1), 5),
               Error);
}

TEST(EnumerateJoint, FiniteMemoryUnitMass) {
  const auto table = enumerate_joint(cycle_graph(4), urns({1, 2, 1, 2}, {2, 1, 2, 1}),
                                     DeltaSchedule<Q>::constant(Q(1)), 4, MemoryMode::finite(2));
  EXPECT_EQ(table.total(), Q(1));
}

TEST(NodeMarginal, CompleteNetworkMarginalIsRho) {
  for (std::size_t n : {2u, 3u}) {
    const Network net = complete_graph(n);
    const auto init = n == 2 ? urns({1, 3}, {2, 1}) : urns({1, 2, 1}, {1, 1, 3});
    const auto table = enumerate_joint(net, init, DeltaSchedule<Q>::constant(Q(1)), 4);
    const Q rho = complete_params(init, Q(1)).rho;
    for (NodeId i = 0; i < n; ++i) {
      for (std::size_t t = 1; t <= 4; ++t) {
        const auto m = node_marginal(table, i, t, t);
        EXPECT_EQ(m[1], rho);
        EXPECT_EQ(m[0] + m[1], Q(1));
      }
    }
  }
}

TEST(NodeMarginal, PairOnSymmetricK2) {
  // ρ = 1/2 and δ = N Δ / T̄ = 2 * 2 / 4 = 1.
  const auto table = enumerate_joint(complete_graph(2), urns({1, 1}, {1, 1}),
                                     DeltaSchedule<Q>::constant(Q(2)), 2);
  EXPECT_EQ(node_marginal(table, 0, 1, 2)[3], Q(5, 16));
}

TEST(ClosedForms, CompleteMarginal) {
  EXPECT_EQ(complete_marginal(Q(3, 5)), Q(3, 5));
  EXPECT_DOUBLE_EQ(complete_marginal(0.6), 0.6);
}

TEST(ClosedForms, PairJointExamples) {
  EXPECT_EQ(complete_n1_joint(Q(1, 2), Q(1), 2), Q(5, 16));
  EXPECT_EQ(complete_n1_joint(Q(2, 7), Q(0), 4), Q(4, 49));
}

// Own-node and cross-node (n, 1) joints against the oracle.
TEST(ClosedForms, PairJointMatchesOracle) {
  for (std::size_t nodes : {2u, 3u}) {
    const Network net = complete_graph(nodes);
    const auto init = nodes == 2 ? urns({1, 2}, {2, 1}) : urns({1, 1, 1}, {1, 2, 1});
    const Q d(1);
    const auto cp = complete_params(init, d);
    const Q closed = complete_n1_joint(cp.rho, cp.delta, nodes);
    for (std::size_t n = 2; n <= 4; ++n) {
      if (nodes * n > 9) continue;  // keep the brute-force oracle small
      EXPECT_EQ(oracle_all_red(net, init, d, n, {{0, n}, {0, 1}}), closed) << nodes << " " << n;
      EXPECT_EQ(oracle_all_red(net, init, d, n, {{1, n}, {0, 1}}), closed) << nodes << " " << n;
    }
    // The library table covers the remaining sizes.
    const auto table = enumerate_joint(net, init, DeltaSchedule<Q>::constant(d), 4);
    for (std::size_t n = 2; n <= 4; ++n) {
      const std::vector<std::pair<NodeId, std::size_t>> own{{0, n}, {0, 1}}, cross{{1, n}, {0, 1}};
      EXPECT_EQ(table.probability_all_red(own), closed);
      EXPECT_EQ(table.probability_all_red(cross), closed);
    }
  }
}

TEST(ClosedForms, NonstationarityWitness) {
  const auto [a, b] = nonstationarity_witness(Q(1, 2), Q(1));
  EXPECT_EQ(a, Q(5, 16));
  EXPECT_EQ(b, Q(61, 192));
  const Network k2 = complete_graph(2);
  const auto init = urns({1, 1}, {1, 1});
  EXPECT_EQ(oracle_all_red(k2, init, Q(2), 2, {{0, 2}, {0, 1}}), a);
  EXPECT_EQ(oracle_all_red(k2, init, Q(2), 3, {{0, 3}, {0, 2}}), b);
  const auto [c, d] = nonstationarity_witness(Q(1, 3), Q(0));
  EXPECT_EQ(c, Q(1, 9));
  EXPECT_EQ(d, Q(1, 9));
}

TEST(ClosedForms, WitnessMatchesOracleOffSymmetry) {
  // ρ = 1/3 and δ = 2Δ/T̄ = 1/2 on K_2.
  const auto init = urns({1, 1}, {2, 2});
  const Q d(3, 2);
  const auto cp = complete_params(init, d);
  const auto [a, b] = nonstationarity_witness(cp.rho, cp.delta);
  EXPECT_EQ(oracle_all_red(complete_graph(2), init, d, 2, {{0, 2}, {0, 1}}), a);
  EXPECT_EQ(oracle_all_red(complete_graph(2), init, d, 3, {{0, 3}, {0, 2}}), b);
}

TEST(ClosedForms, WitnessDiffersForPositiveDelta) {
  for (int k = 1; k <= 20; ++k) {
    const auto [a, b] = nonstationarity_witness(Q(1, 2), Q(k, 10));
    EXPECT_NE(a, b) << k;
  }
}

TEST(AverageInfection, Examples) {
  const auto sched = DeltaSchedule<Q>::constant(Q(1));
  const auto init = urns({1, 3, 2}, {2, 1, 2});
  const Q rho = complete_params(init, Q(1)).rho;
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(average_infection_rate(complete_graph(3), init, sched, n), rho);
  }
  const Network path = path_graph(3);
  const auto pinit = urns({1, 1, 1}, {1, 1, 3});
  const Q expect = (Q(1, 2) + Q(3, 8) + Q(1, 3)) / 3;
  EXPECT_EQ(average_infection_rate(path, pinit, sched, 1), expect);
  EXPECT_EQ(average_infection_rate(path, pinit, DeltaSchedule<Q>::constant(Q(0)), 4), expect);
}

TEST(LumpedRecursion, MatchesEnumeration) {
  for (std::size_t nodes : {1u, 2u, 3u, 4u}) {
    const Network net = complete_graph(nodes);
    auto init = UrnInit<Q>::uniform(nodes, Q(2), Q(3));
    init.red[0] = Q(1);
    const auto sched = DeltaSchedule<Q>::constant(Q(3, 2), Q(1, 2));
    const std::size_t n = nodes <= 2 ? 5 : 4;
    const auto lumped = node_process_distribution(net, init, sched, 0, n);
    const auto table = node_marginal(enumerate_joint(net, init, sched, n), 0, 1, n);
    EXPECT_EQ(lumped, table) << nodes;
  }
}

TEST(LumpedRecursion, HandlesLargeCompleteNetworks) {
  const auto p = complete_node_process(100, 200.0, 500.0, 1.0, 1.0, 8);
  double sum = 0, first = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    sum += p[a];
    if (a & 1) first += p[a];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(first, 0.4, 1e-12);
}

TEST(ClassicalPolya, Examples) {
  const PolyaParams<Q> half{Q(1, 2), Q(1, 2)};
  EXPECT_EQ(classical_polya_joint(half, 0b11, 2), Q(1, 3));
  const PolyaParams<Q> p{Q(2, 7), Q(1, 3)};
  EXPECT_EQ(classical_polya_joint(p, 1, 1), Q(2, 7));
  EXPECT_EQ(classical_polya_joint(p, 0, 1), Q(5, 7));
}

TEST(ClassicalPolya, ExchangeableAndUnitMass) {
  const PolyaParams<Q> p{Q(3, 8), Q(2, 5)};
  const auto table = classical_polya_table(p, 8);
  Q total(0);
  std::vector<Q> by_count(9, Q(-1));
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    total += table[a];
    const int k = std::popcount(a);
    if (by_count[k] < 0) by_count[k] = table[a];
    EXPECT_EQ(table[a], by_count[k]);
  }
  EXPECT_EQ(total, Q(1));
}

TEST(ClassicalPolya, GammaFormAgrees) {
  for (double rho : {0.1, 0.5, 0.83}) {
    for (double delta : {0.0, 0.05, 0.5, 3.0}) {
      const PolyaParams<double> p{rho, delta};
      for (std::uint64_t a = 0; a < 1024; a += 37) {
        EXPECT_NEAR(classical_polya_joint_gamma(rho, delta, a, 10), classical_polya_joint(p, a, 10),
                    1e-9);
      }
    }
  }
}

TEST(ClassicalPolya, SingleNodeEqualsEnumeration) {
  const Network one = complete_graph(1);
  const auto init = urns({2}, {3});
  const Q d(3, 2);
  const auto table = enumerate_joint(one, init, DeltaSchedule<Q>::constant(d), 10);
  const PolyaParams<Q> p{Q(2, 5), d / 5};
  for (std::uint64_t a = 0; a < table.size(); ++a) ASSERT_EQ(table[a], classical_polya_joint(p, a, 10));
}

TEST(ClassicalPolya, RejectsInvalidParameters) {
  EXPECT_THROW(classical_polya_joint(PolyaParams<double>{0.0, 1.0}, 0, 1), Error);
  EXPECT_THROW(classical_polya_joint(PolyaParams<double>{0.5, -1.0}, 0, 1), Error);
}

TEST(KlRate, BasicProperties) {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  EXPECT_DOUBLE_EQ(kl_rate(p, p, 2), 0.0);
  const std::vector<double> q{0.25, 0.25, 0.25, 0.25};
  double expect = 0;
  for (double x : p) expect += x * std::log(x / 0.25);
  EXPECT_NEAR(kl_rate(p, q, 2), expect / 2, 1e-15);
  EXPECT_GE(kl_rate(q, p, 2), 0.0);
  const std::vector<double> hole{0.5, 0.5, 0.0, 0.0};
  EXPECT_THROW(kl_rate(p, hole, 2), Error);
  EXPECT_NO_THROW(kl_rate(hole, p, 2));
  EXPECT_THROW(kl_rate(p, std::vector<double>{1.0}, 2), Error);
}

TEST(KlRate, SingleNodeAgainstMatchingPolyaIsZero) {
  const auto init = UrnInit<double>::uniform(1, 1.0, 3.0);
  const auto m = node_process_distribution(complete_graph(1), init,
                                           DeltaSchedule<double>::constant(2.0), 0, 8);
  const auto q = classical_polya_table(PolyaParams<double>{0.25, 0.5}, 8);
  EXPECT_NEAR(kl_rate(m, q, 8), 0.0, 1e-15);
}

TEST(SusceptibilityDrift, RegularNetworkIsMartingale) {
  const auto drift = exact_susceptibility_drift(cycle_graph(4), urns({1, 2, 3, 1}, {3, 2, 1, 3}),
                                                DeltaSchedule<Q>::constant(Q(1)), 3);
  for (const Q& d : drift) EXPECT_EQ(d, Q(0));
}

TEST(SusceptibilityDrift, IrregularNetworkWitness) {
  const auto drift = exact_susceptibility_drift(star_graph(4), urns({1, 3, 1, 1}, {3, 1, 3, 3}),
                                                DeltaSchedule<Q>::constant(Q(1)), 2);
  EXPECT_GT(drift[0], Q(0));
}

TEST(JointTableCsv, RationalAndDoubleColumns) {
  const Network k2 = complete_graph(2);
  std::ostringstream q, d;
  write_joint_table_csv(q, enumerate_joint(k2, urns({1, 1}, {1, 1}), DeltaSchedule<Q>::constant(Q(1)), 1));
  EXPECT_EQ(q.str(), "a_{1,1},a_{2,1},p_num,p_den\n0,0,1,4\n1,0,1,4\n0,1,1,4\n1,1,1,4\n");
  write_joint_table_csv(d, enumerate_joint(k2, UrnInit<double>::uniform(2, 1, 1),
                                           DeltaSchedule<double>::constant(1), 1));
  EXPECT_EQ(d.str(), "a_{1,1},a_{2,1},p\n0,0,0.25\n1,0,0.25\n0,1,0.25\n1,1,0.25\n");
}

}  // namespace
}  // namespace polya
