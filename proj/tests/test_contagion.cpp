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

#include <vector>

#include <gtest/gtest.h>

#include "polya/contagion.hpp"
#include "polya/exact.hpp"
#include "polya/state_json.hpp"

namespace polya {
namespace {

using Q = Rational;

Network k2() { return complete_graph(2); }

UrnInit<Q> urns(std::vector<long> red, std::vector<long> black) {
  UrnInit<Q> init;
  for (long r : red) init.red.emplace_back(r);
  for (long b : black) init.black.emplace_back(b);
  return init;
}

// Direct bookkeeping of the finite-memory urn: initial mass plus the
// additions of the last M steps, recomputed from scratch.
Q naive_window(const Network& net, const UrnInit<Q>& init, const Q& dr, const Q& db,
               const DrawRecord& rec, std::size_t m, NodeId i) {
  Q red(0), total(0);
  for (NodeId j : net.closed_neighborhood(i)) {
    red += init.red[j];
    total += init.total(j);
    for (std::size_t t = rec.size() > m ? rec.size() - m : 0; t < rec.size(); ++t) {
      if (rec[t][j]) {
        red += dr;
        total += dr;
      } else {
        total += db;
      }
    }
  }
  return red / total;
}

TEST(InitialState, SuperUrnProportions) {
  const auto s = initial_state(k2(), urns({1, 1}, {1, 1}), MemoryMode::infinite());
  EXPECT_EQ(super_urn_proportion(s, k2(), 0), Q(1, 2));

  const auto a = initial_state(k2(), urns({3, 1}, {1, 3}), MemoryMode::infinite());
  EXPECT_EQ(a.individual_proportion(0), Q(3, 4));
  EXPECT_EQ(a.individual_proportion(1), Q(1, 4));
  EXPECT_EQ(super_urn_proportion(a, k2(), 0), Q(1, 2));
  EXPECT_EQ(super_urn_proportion(a, k2(), 1), Q(1, 2));

  const Network path = path_graph(3);
  const auto p = initial_state(path, urns({1, 1, 1}, {1, 1, 3}), MemoryMode::infinite());
  EXPECT_EQ(conditional_draw_probabilities(p, path), (std::vector<Q>{Q(1, 2), Q(3, 8), Q(1, 3)}));
}

TEST(InitialState, RejectsSizeMismatchAndEmptyUrns) {
  EXPECT_THROW(initial_state(k2(), urns({1}, {1}), MemoryMode::infinite()), Error);
  EXPECT_THROW(initial_state(k2(), urns({0, 1}, {1, 1}), MemoryMode::infinite()), Error);
}

TEST(SuperUrn, SingleNodeEqualsIndividualUrn) {
  const Network one = complete_graph(1);
  const auto s = initial_state(one, urns({2}, {3}), MemoryMode::infinite());
  EXPECT_EQ(super_urn_proportion(s, one, 0), s.individual_proportion(0));
  EXPECT_EQ(conditional_draw_probabilities(s, one), std::vector<Q>{Q(2, 5)});
}

TEST(SuperUrn, AfterOneStepOnPair) {
  const auto s0 = initial_state(k2(), urns({1, 1}, {1, 1}), MemoryMode::infinite());
  const DrawVector d{1, 0};
  const auto s1 = apply_draws(s0, k2(), d, DeltaSchedule<Q>::constant(Q(1)));
  EXPECT_EQ(s1.time(), 1u);
  EXPECT_EQ(super_urn_proportion(s1, k2(), 0), Q(1, 2));
}

TEST(ApplyDraws, Examples) {
  const Network one = complete_graph(1);
  const auto s0 = initial_state(one, urns({1}, {1}), MemoryMode::infinite());
  const auto s1 = apply_draws(s0, one, DrawVector{1}, DeltaSchedule<Q>::constant(Q(1)));
  EXPECT_EQ(s1.individual_proportion(0), Q(2, 3));

  const auto z = apply_draws(s0, one, DrawVector{0}, DeltaSchedule<Q>::constant(Q(1), Q(0)));
  EXPECT_EQ(z.red_mass(0), s0.red_mass(0));
  EXPECT_EQ(z.total_mass(0), s0.total_mass(0));
  EXPECT_EQ(z.time(), 1u);
}

TEST(ApplyDraws, FiniteMemoryExpiresOldAdditions) {
  const Network one = complete_graph(1);
  const auto sched = DeltaSchedule<Q>::constant(Q(1));
  const DrawRecord rec{{1}, {0}};
  const auto s = replay(one, urns({1}, {1}), sched, rec, MemoryMode::finite(1));
  EXPECT_EQ(s.individual_proportion(0), Q(1, 3));
}

TEST(ApplyDraws, RejectsWrongLengthAndNegativeMass) {
  const auto s0 = initial_state(k2(), urns({1, 1}, {1, 1}), MemoryMode::infinite());
  EXPECT_THROW(apply_draws(s0, k2(), DrawVector{1}, DeltaSchedule<Q>::constant(Q(1))), Error);
  EXPECT_THROW(DeltaSchedule<Q>::constant(Q(-1)), Error);
}

TEST(Properties, MassConservationAndOpenUnitInterval) {
  const Network net = barabasi_albert(9, 2, 1);
  UrnInit<double> init;
  Rng rng(11);
  for (NodeId i = 0; i < 9; ++i) {
    init.red.push_back(1 + rng.uniform() * 5);
    init.black.push_back(1 + rng.uniform() * 5);
  }
  std::vector<double> dr, db;
  for (NodeId i = 0; i < 9; ++i) {
    dr.push_back(rng.uniform() * 3);
    db.push_back(rng.uniform() * 3);
  }
  const auto sched = DeltaSchedule<double>::per_node(dr, db);
  for (const MemoryMode mode : {MemoryMode::infinite(), MemoryMode::finite(3)}) {
    auto state = initial_state(net, init, mode);
    for (int t = 0; t < 200; ++t) {
      double before = 0;
      for (NodeId i = 0; i < 9; ++i) before += state.total_mass(i);
      auto [draws, next] = sample_step(state, net, sched, rng);
      if (!mode.is_finite()) {
        double added = 0;
        for (NodeId i = 0; i < 9; ++i) added += draws[i] ? dr[i] : db[i];
        double after = 0;
        for (NodeId i = 0; i < 9; ++i) after += next.total_mass(i);
        EXPECT_NEAR(after - before, added, 1e-9);
      }
      state = std::move(next);
      for (NodeId i = 0; i < 9; ++i) {
        ASSERT_GT(state.individual_proportion(i), 0.0);
        ASSERT_LT(state.individual_proportion(i), 1.0);
        const double s = super_urn_proportion(state, net, i);
        ASSERT_GT(s, 0.0);
        ASSERT_LT(s, 1.0);
      }
    }
  }
}

TEST(Properties, ExactMassConservation) {
  const Network net = cycle_graph(4);
  const auto init = urns({1, 2, 3, 4}, {4, 3, 2, 1});
  const auto sched = DeltaSchedule<Q>::per_node({Q(1), Q(1, 2), Q(2), Q(3)}, {Q(2), Q(1, 3), Q(1), Q(0)});
  auto s = initial_state(net, init, MemoryMode::infinite());
  const DrawVector d{1, 0, 0, 1};
  Q before(0), after(0);
  for (NodeId i = 0; i < 4; ++i) before += s.total_mass(i);
  s = apply_draws(s, net, d, sched);
  for (NodeId i = 0; i < 4; ++i) after += s.total_mass(i);
  EXPECT_EQ(after - before, Q(1) + Q(1, 3) + Q(1) + Q(3));
}

TEST(Properties, ZeroReinforcementKeepsProbabilitiesFixed) {
  const Network net = star_graph(4);
  const auto init = urns({1, 2, 1, 3}, {2, 1, 1, 1});
  const auto sched = DeltaSchedule<Q>::constant(Q(0));
  EXPECT_TRUE(sched.is_identically_zero());
  const auto p0 = conditional_draw_probabilities(initial_state(net, init, MemoryMode::infinite()), net);
  const auto s = replay(net, init, sched, DrawRecord{{1, 0, 1, 1}, {0, 0, 1, 0}});
  EXPECT_EQ(conditional_draw_probabilities(s, net), p0);
}

TEST(Properties, CompleteNetworkSharesOneSuperUrn) {
  const Network net = complete_graph(4);
  const auto init = urns({1, 2, 3, 1}, {3, 1, 1, 2});
  const auto sched = DeltaSchedule<Q>::constant(Q(2), Q(1));
  visit_histories(
      net, init, sched, 2,
      [&](const DrawRecord&, const NetworkState<Q>& s, const Q&) {
        for (NodeId i = 1; i < 4; ++i)
          EXPECT_EQ(super_urn_proportion(s, net, i), super_urn_proportion(s, net, 0));
      });
}

TEST(Sampling, DeterministicForFixedSeed) {
  const Network net = cycle_graph(5);
  const auto init = UrnInit<double>::uniform(5, 1, 2);
  const auto sched = DeltaSchedule<double>::constant(1);
  auto run = [&] {
    Rng rng(99);
    auto s = initial_state(net, init, MemoryMode::infinite());
    DrawRecord rec;
    for (int t = 0; t < 50; ++t) {
      auto [d, next] = sample_step(s, net, sched, rng);
      rec.push_back(d);
      s = next;
    }
    return rec;
  };
  EXPECT_EQ(run(), run());
}

TEST(Sampling, FirstDrawFrequencyMatchesRho) {
  const Network net = k2();
  const auto init = UrnInit<double>::uniform(2, 1, 3);  // ρ = 1/4
  const auto sched = DeltaSchedule<double>::constant(1);
  Rng rng(5);
  const int n = 100000;
  int reds = 0;
  const auto s0 = initial_state(net, init, MemoryMode::infinite());
  for (int k = 0; k < n; ++k) reds += sample_step(s0, net, sched, rng).first[0];
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  EXPECT_NEAR(static_cast<double>(reds) / n, 0.25, 3 * sigma);
}

TEST(FiniteMemory, MatchesInfiniteBeforeWindowFills) {
  const Network net = path_graph(3);
  const auto init = urns({1, 2, 1}, {1, 1, 2});
  const auto sched = DeltaSchedule<Q>::constant(Q(1), Q(2));
  const DrawRecord rec{{1, 0, 0}, {0, 1, 1}};
  const auto fin = replay(net, init, sched, rec, MemoryMode::finite(3));
  const auto inf = replay(net, init, sched, rec);
  for (NodeId i = 0; i < 3; ++i) {
    EXPECT_EQ(finite_memory_conditional(fin, net, i), super_urn_proportion(inf, net, i));
  }
}

TEST(FiniteMemory, OnlyLastDrawMattersWithWindowOne) {
  const Network one = complete_graph(1);
  const auto sched = DeltaSchedule<Q>::constant(Q(1));
  for (const DrawRecord& rec : {DrawRecord{{0}, {0}, {1}}, DrawRecord{{1}, {1}, {1}}}) {
    const auto s = replay(one, urns({1}, {1}), sched, rec, MemoryMode::finite(1));
    EXPECT_EQ(finite_memory_conditional(s, one, 0), Q(2, 3));
  }
}

TEST(FiniteMemory, RingBufferMatchesDirectWindowSum) {
  const Network net = barabasi_albert(6, 2, 3);
  const auto init = urns({1, 2, 1, 3, 1, 2}, {2, 1, 3, 1, 1, 1});
  const Q dr(3, 2), db(1, 3);
  const auto sched = DeltaSchedule<Q>::constant(dr, db);
  Rng rng(8);
  for (std::size_t m : {1u, 2u, 5u}) {
    DrawRecord rec;
    for (int t = 0; t < 12; ++t) {
      DrawVector d(6);
      for (auto& x : d) x = rng.below(2);
      rec.push_back(d);
      const auto s = replay(net, init, sched, rec, MemoryMode::finite(m));
      for (NodeId i = 0; i < 6; ++i) {
        const Q oracle = naive_window(net, init, dr, db, rec, m, i);
        EXPECT_EQ(finite_memory_conditional(s, net, i), oracle);
        EXPECT_EQ(window_conditional(net, init, sched, rec, m, i), oracle);
      }
    }
  }
}

TEST(FiniteMemory, PermutingWindowLeavesValueUnchanged) {
  const Network net = k2();
  const auto init = urns({1, 2}, {2, 1});
  const auto sched = DeltaSchedule<Q>::constant(Q(1));
  const DrawRecord a{{1, 1}, {1, 0}, {0, 0}, {0, 1}};
  const DrawRecord b{{1, 1}, {0, 1}, {0, 0}, {1, 0}};
  const auto sa = replay(net, init, sched, a, MemoryMode::finite(3));
  const auto sb = replay(net, init, sched, b, MemoryMode::finite(3));
  EXPECT_EQ(finite_memory_conditional(sa, net, 0), finite_memory_conditional(sb, net, 0));
}

TEST(FiniteMemory, RequiresFiniteState) {
  const auto s = initial_state(k2(), urns({1, 1}, {1, 1}), MemoryMode::infinite());
  EXPECT_THROW(finite_memory_conditional(s, k2(), 0), Error);
  EXPECT_THROW(MemoryMode::finite(0), Error);
}

TEST(Increment, PairExampleAndEnumerationCrossCheck) {
  const Network net = k2();
  const auto init = urns({3, 1}, {1, 3});
  const auto s = initial_state(net, init, MemoryMode::infinite());
  const auto sched = DeltaSchedule<Q>::constant(Q(1));
  EXPECT_EQ(expected_urn_increment(s, net, 0, Q(1)), Q(-1, 20));
  const Q e = next_step_expectation(s, net, sched,
                                    [](const NetworkState<Q>& x) { return x.individual_proportion(0); });
  EXPECT_EQ(e - s.individual_proportion(0), Q(-1, 20));
}

TEST(Increment, ZeroWhenProportionsAgreeOrNoNeighbors) {
  const auto s = initial_state(cycle_graph(4), urns({1, 1, 1, 1}, {2, 2, 2, 2}), MemoryMode::infinite());
  for (NodeId i = 0; i < 4; ++i) EXPECT_EQ(expected_urn_increment(s, cycle_graph(4), i, Q(1)), Q(0));
  const auto one = initial_state(complete_graph(1), urns({1}, {4}), MemoryMode::infinite());
  EXPECT_EQ(expected_urn_increment(one, complete_graph(1), 0, Q(3)), Q(0));
}

TEST(Increment, RejectsUnequalTotals) {
  const auto s = initial_state(k2(), urns({1, 1}, {1, 2}), MemoryMode::infinite());
  EXPECT_THROW(expected_urn_increment(s, k2(), 0, Q(1)), Error);
}

TEST(CuringBound, Examples) {
  const Network net = k2();
  const auto s = initial_state(net, urns({1, 3}, {3, 1}), MemoryMode::infinite());
  EXPECT_EQ(curing_delta_bound(s, net, 0, Q(2)), Q(6));
  EXPECT_EQ(curing_delta_bound(s, net, 0, Q(0)), Q(0));
  const auto even = initial_state(net, urns({1, 1}, {3, 3}), MemoryMode::infinite());
  EXPECT_EQ(curing_delta_bound(even, net, 0, Q(5, 2)), Q(5, 2));
}

TEST(CuringBound, TwoOutcomeExpectation) {
  const Network net = k2();
  const auto s = initial_state(net, urns({1, 3}, {3, 1}), MemoryMode::infinite());
  const Q dr(2), db = curing_delta_bound(s, net, 0, dr);
  const Q u = s.individual_proportion(0), x = s.total_mass(0), r = s.red_mass(0);
  const Q sp = super_urn_proportion(s, net, 0);
  // The increment numerator has zero mean at the bound.
  EXPECT_EQ(sp * dr * (1 - u) - (1 - sp) * db * u, Q(0));
  // U itself still drifts, because the new total depends on the draw.
  const Q expected = sp * (r + dr) / (x + dr) + (1 - sp) * r / (x + db);
  EXPECT_EQ(expected, Q(3, 10));
  EXPECT_EQ(expected - u, sp * dr * (1 - u) * (1 / (x + dr) - 1 / (x + db)));
  // Here only an infinite black mass would remove the drift.
  EXPECT_FALSE(exact_curing_mass(s, net, 0, dr).has_value());
}

TEST(CuringBound, DriftMatchesTwoOutcomeFormula) {
  const Network net = path_graph(3);
  const auto init = urns({1, 3, 2}, {3, 1, 2});
  const Q dr(1);
  for (const Q& mult : {Q(0), Q(1, 2), Q(1), Q(2)}) {
    const auto sched = DeltaSchedule<Q>::curing(dr, mult);
    visit_histories(net, init, sched, 2, [&](const DrawRecord&, const NetworkState<Q>& s, const Q&) {
      for (NodeId i = 0; i < 3; ++i) {
        const Q u = s.individual_proportion(i), x = s.total_mass(i);
        const Q sp = super_urn_proportion(s, net, i);
        const Q b = mult * curing_delta_bound(s, net, i, dr);
        const Q drift = next_step_expectation(
                            s, net, sched,
                            [i](const NetworkState<Q>& y) { return y.individual_proportion(i); }) -
                        u;
        EXPECT_EQ(drift, sp * dr * (1 - u) / (x + dr) - (1 - sp) * u * b / (x + b));
        if (mult == 0) {
          EXPECT_GT(drift, Q(0));
        }
        if (mult == 1) {
          EXPECT_EQ(sp * dr * (1 - u) - (1 - sp) * b * u, Q(0));
        }
      }
    });
  }
}

TEST(CuringBound, ExactMassGivesMartingale) {
  const Network net = path_graph(3);
  const auto init = urns({2, 1, 3}, {1, 2, 1});
  const Q dr(1);
  std::size_t found = 0, missing = 0;
  visit_histories(net, init, DeltaSchedule<Q>::constant(dr), 3,
                  [&](const DrawRecord&, const NetworkState<Q>& s, const Q&) {
                    for (NodeId i = 0; i < 3; ++i) {
                      const auto b = exact_curing_mass(s, net, i, dr);
                      if (!b) {
                        ++missing;
                        continue;
                      }
                      ++found;
                      EXPECT_GE(*b, Q(0));
                      std::vector<Q> black(3, Q(1));
                      black[i] = *b;
                      const auto sched = DeltaSchedule<Q>::per_node(std::vector<Q>(3, dr), black);
                      EXPECT_EQ(next_step_expectation(s, net, sched,
                                                      [i](const NetworkState<Q>& y) {
                                                        return y.individual_proportion(i);
                                                      }),
                                s.individual_proportion(i));
                    }
                  });
  EXPECT_GT(found, 0u);
  EXPECT_GT(missing, 0u);
}

TEST(Susceptibility, MeanOfIndividualProportions) {
  const auto s = initial_state(k2(), urns({3, 1}, {1, 3}), MemoryMode::infinite());
  EXPECT_EQ(network_susceptibility(s), Q(1, 2));
  const auto sym = initial_state(cycle_graph(5), UrnInit<Q>::uniform(5, Q(2), Q(2)), MemoryMode::infinite());
  EXPECT_EQ(network_susceptibility(sym), Q(1, 2));
}

TEST(Schedule, TabulatedAndValidation) {
  const auto tab = DeltaSchedule<Q>::tabulated({{Q(1), Q(2)}, {Q(3), Q(4)}}, {{Q(0), Q(0)}, {Q(1), Q(1)}});
  EXPECT_NO_THROW(tab.validate(2, 2));
  EXPECT_THROW(tab.validate(2, 3), Error);
  EXPECT_THROW(tab.validate(3, 2), Error);
  const auto s = replay(k2(), urns({1, 1}, {1, 1}), tab, DrawRecord{{1, 0}, {1, 1}});
  EXPECT_EQ(s.red_mass(0), Q(1 + 1 + 3));
  EXPECT_EQ(s.total_mass(1), Q(2 + 0 + 4));
}

TEST(StateJson, RoundTripsBothModes) {
  const Network net = cycle_graph(4);
  const auto init = urns({1, 2, 3, 4}, {4, 3, 2, 1});
  const auto sched = DeltaSchedule<Q>::constant(Q(1, 3), Q(2));
  const DrawRecord rec{{1, 0, 0, 1}, {0, 1, 1, 1}, {1, 1, 0, 0}};
  for (const MemoryMode mode : {MemoryMode::infinite(), MemoryMode::finite(2)}) {
    const auto s = replay(net, init, sched, rec, mode);
    const auto back = state_from_json<Q>(state_to_json(s));
    EXPECT_EQ(back, s);
    // Stepping the restored state gives the same result.
    const DrawVector d{0, 0, 1, 1};
    EXPECT_EQ(apply_draws(back, net, d, sched), apply_draws(s, net, d, sched));
  }
}

}  // namespace
}  // namespace polya
