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

#ifndef POLYA_MONTECARLO_HPP_
#define POLYA_MONTECARLO_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polya/beta.hpp"
#include "polya/contagion.hpp"
#include "polya/graph.hpp"

namespace polya {

struct StatsSelection {
  bool sample_averages = true;
  bool pair_freq = true;
  bool node_urn = false;    // per-node trial mean of U_{i,t}
  bool increments = false;  // mean and variance of Ũ_t - Ũ_{t-1}
  // Counts of full-network assignments over the first k steps (N k <= 24).
  std::size_t assignment_horizon = 0;
  // Per-node counts of the pattern of the first k draws (k <= 16).
  std::size_t node_prefix = 0;
};

struct RunConfig {
  Network network;
  UrnInit<double> init;
  DeltaSchedule<double> schedule;
  MemoryMode memory;
  std::size_t horizon = 1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  StatsSelection collect;
  unsigned threads = 0;  // 0: default_thread_count()

  // Preconditions of every module involved; throws Error.
  void validate() const;
};

/// Aggregated results of run_trials. Time-indexed vectors are indexed by the
/// step t, with slot 0 holding t = 0 where it is meaningful.
struct TrialStatistics {
  std::size_t trials = 0;
  std::size_t horizon = 0;
  std::size_t node_count = 0;

  std::vector<double> mean_infection;       // [t], Ĩ_t estimate; [0] unused
  std::vector<double> mean_susceptibility;  // [t], trial mean of Ũ_t
  std::vector<std::vector<double>> node_infection;  // [i][t], P(Z_{i,t}=1)
  std::vector<std::vector<double>> pair_freq;       // [i][t], P(Z_{i,t}=1, Z_{i,t-1}=1), t >= 2
  std::vector<std::vector<double>> sample_averages; // [i][trial], (1/n) Σ_t Z_{i,t}
  std::vector<std::vector<double>> node_urn_mean;   // [i][t]
  std::vector<double> increment_mean;               // [t], mean of Ũ_t - Ũ_{t-1}
  std::vector<double> increment_variance;           // [t], sample variance
  std::vector<std::uint64_t> assignment_counts;     // JointTable index order
  std::vector<std::vector<std::uint64_t>> node_prefix_counts;  // [i][pattern]

  friend bool operator==(const TrialStatistics&, const TrialStatistics&) = default;
};

// POLYA_NET_THREADS if set and positive, else hardware concurrency.
unsigned default_thread_count();

/// Runs cfg.trials independent trajectories. Trial k uses
/// Rng::stream(cfg.seed, k); trials are grouped in fixed blocks whose partial
/// sums are merged in block order, so the output does not depend on the
/// number of threads.
TrialStatistics run_trials(const RunConfig& cfg);

// One trajectory's draws (trial index `trial` of the config's stream family).
DrawRecord simulate_record(const RunConfig& cfg, std::uint64_t trial);

struct Histogram {
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> density;  // integrates to 1
};

// Density-normalised histogram on [0, 1] with equal-width bins; 1.0 falls in
// the last bin. Needs at least `bins` samples.
Histogram histogram(std::span<const double> samples, std::size_t bins);

// sup_x |F_n(x) - F(x)| against Beta(alpha, beta), evaluated at the samples.
double ks_fit(std::span<const double> samples, const BetaParams& params);

struct StationarityReport {
  double max_deviation = 0;  // max |pair_freq(t) - pair_freq(t-1)| over the window
  double settled_value = 0;  // mean pair_freq over the window
  std::size_t window = 0;
};

// window = 0 uses the trailing 20% of the horizon.
StationarityReport stationarity_diagnostic(const TrialStatistics& stats, NodeId node,
                                           std::size_t window = 0);

struct ResidualSeries {
  std::vector<double> mean;        // [t], empirical mean of Ũ_t - Ũ_{t-1}
  std::vector<double> std_error;   // [t], standard error of that mean
};

// Empirical increments of the susceptibility. Requires a regular network,
// one constant Δ_r = Δ_b, equal initial totals and infinite memory; throws
// Error{kHypothesisViolation} otherwise.
ResidualSeries martingale_residual(RunConfig cfg);

struct Trend {
  double slope = 0;
  double std_error = 0;
};

// Least-squares slope of series[first..last] against t.
Trend linear_trend(std::span<const double> series, std::size_t first, std::size_t last);

struct InfectionRate {
  double value = 0;
  bool is_estimate = false;
};

// Exact Ĩ_n when N (n - 1) fits the enumeration cap, otherwise a Monte Carlo
// estimate from cfg (its horizon is raised to n if needed).
InfectionRate infection_rate(const RunConfig& cfg, std::size_t n);

inline constexpr char kVersion[] = "0.1.0";

struct OutputHeader {
  std::string config_hash;
  std::uint64_t seed = 0;
};

std::string header_line(const OutputHeader& h);

// Columns t,I_tilde,U_tilde and pair_freq of `pair_node` when given.
void write_trajectory_csv(std::ostream& out, const TrialStatistics& stats,
                          const OutputHeader& header, long pair_node = -1);
void write_histogram_csv(std::ostream& out, const Histogram& h, const OutputHeader& header);

}  // namespace polya

#endif  // POLYA_MONTECARLO_HPP_
