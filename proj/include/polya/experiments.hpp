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


// Scaled-down figure experiments shared by `polya_net reproduce` and the
// acceptance suite.

#ifndef POLYA_EXPERIMENTS_HPP_
#define POLYA_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "polya/approx.hpp"
#include "polya/beta.hpp"
#include "polya/montecarlo.hpp"

namespace polya {

// Integer urn masses R_i, B_i uniform on {1..max_mass}, drawn from a stream
// of `seed` that trial streams never use.
UrnInit<double> random_masses(std::size_t node_count, std::uint64_t seed, unsigned max_mass = 10);

// Pair-frequency settling on a 5-node BA network.
struct Fig2Options {
  std::size_t nodes = 5;
  std::size_t attach = 2;
  std::size_t trials = 50000;
  std::size_t horizon = 1000;
  std::size_t window = 200;
  double red = 1;
  double black = 4;
  double delta = 1;
  NodeId node = 0;
  std::uint64_t seed = 2;
  unsigned threads = 0;

  nlohmann::json to_json() const;
};

struct Fig2Result {
  TrialStatistics stats;
  StationarityReport report;
};

Fig2Result run_fig2(const Fig2Options& opt);
void write_fig2_csv(std::ostream& out, const Fig2Options& opt, const Fig2Result& r);

// Beta limits of per-node sample averages.
struct Fig4Options {
  std::size_t trials = 5000;
  std::size_t horizon = 1000;
  std::size_t small_nodes = 5;
  std::size_t large_nodes = 100;
  std::size_t attach = 2;
  double delta = 1;
  unsigned max_mass = 10;
  NodeId node = 0;
  std::size_t bins = 50;
  std::uint64_t seed = 4;
  unsigned threads = 0;

  nlohmann::json to_json() const;
};

struct BetaFitCase {
  std::string label;
  ModelKind model = ModelKind::kLargeNetwork;
  double rho = 0;
  double delta = 0;
  BetaParams params{0, 0};
  double ks = 0;
  std::vector<double> samples;
};

struct Fig4Result {
  BetaFitCase classical;  // single urn, ρ = δ = 1/2
  BetaFitCase small_ba;   // small-network model
  BetaFitCase large_ba;   // large-network model
  // The other closed-form model on each BA network, for comparison.
  BetaFitCase small_ba_alt;
  BetaFitCase large_ba_alt;
};

Fig4Result run_fig4(const Fig4Options& opt);
void write_fig4_csv(std::ostream& out, const Fig4Options& opt, const BetaFitCase& c,
                    std::size_t bins);

// Network contagion against the SIS recursion around the epidemic threshold.
struct Fig5Options {
  std::size_t nodes = 20;
  std::size_t attach = 2;
  std::size_t trials = 500;
  std::size_t horizon = 1000;
  std::size_t memory = 50;
  double delta_red = 2;
  double beta = 0.15;
  unsigned max_mass = 10;
  std::size_t trend_first = 100;
  std::uint64_t seed = 5;
  unsigned threads = 0;

  nlohmann::json to_json() const;
};

struct Fig5Scenario {
  std::string label;
  double ratio = 0;  // Δ_b / Δ_r = δ_SIS / β
  std::vector<double> infinite;  // Ĩ_t, t = 0..horizon ([0] unused)
  std::vector<double> finite;
  std::vector<double> sis;  // mean P(t)
  Trend infinite_trend;     // over [trend_first, horizon]
  Trend finite_trend;
};

struct Fig5Result {
  double lambda_max = 0;
  Fig5Scenario low;   // λ_max / 10
  Fig5Scenario met;   // 1.01 λ_max
  Fig5Scenario same;  // 1
};

Fig5Result run_fig5(const Fig5Options& opt);
void write_fig5_csv(std::ostream& out, const Fig5Options& opt, const Fig5Scenario& s);

}  // namespace polya

#endif  // POLYA_EXPERIMENTS_HPP_
