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

#include "polya/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "polya/exact.hpp"

namespace polya {

namespace {

constexpr std::size_t kBlockTrials = 256;

// Partial sums over one block of trials.
struct Accumulator {
  std::vector<std::uint64_t> infected;               // [i * (H+1) + t]
  std::vector<std::uint64_t> pairs;                  // [i * (H+1) + t]
  std::vector<double> susceptibility;                // [t]
  std::vector<double> urn;                           // [i * (H+1) + t]
  std::vector<double> inc_sum, inc_sq;               // [t]
  std::vector<std::uint64_t> assignments;
  std::vector<std::uint64_t> prefixes;               // [i * 2^k + pattern]

  Accumulator(const RunConfig& cfg) {
    const std::size_t n = cfg.network.node_count();
    const std::size_t cells = n * (cfg.horizon + 1);
    infected.assign(cells, 0);
    if (cfg.collect.pair_freq) pairs.assign(cells, 0);
    susceptibility.assign(cfg.horizon + 1, 0.0);
    if (cfg.collect.node_urn) urn.assign(cells, 0.0);
    if (cfg.collect.increments) {
      inc_sum.assign(cfg.horizon + 1, 0.0);
      inc_sq.assign(cfg.horizon + 1, 0.0);
    }
    if (cfg.collect.assignment_horizon > 0) {
      assignments.assign(std::size_t{1} << (n * cfg.collect.assignment_horizon), 0);
    }
    if (cfg.collect.node_prefix > 0) prefixes.assign(n << cfg.collect.node_prefix, 0);
  }

  void merge(const Accumulator& o) {
    auto add = [](auto& a, const auto& b) {
      for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    };
    add(infected, o.infected);
    add(pairs, o.pairs);
    add(susceptibility, o.susceptibility);
    add(urn, o.urn);
    add(inc_sum, o.inc_sum);
    add(inc_sq, o.inc_sq);
    add(assignments, o.assignments);
    add(prefixes, o.prefixes);
  }
};

double mean_individual(const NetworkState<double>& s) {
  double sum = 0;
  for (NodeId i = 0; i < s.node_count(); ++i) sum += s.red_mass(i) / s.total_mass(i);
  return sum / static_cast<double>(s.node_count());
}

// Runs one trial, adding into `acc`; writes sample averages into `avg`
// (one slot per node) when requested.
void run_one(const RunConfig& cfg, std::uint64_t trial, Accumulator& acc, double* avg,
             std::size_t avg_stride) {
  const Network& net = cfg.network;
  const std::size_t n = net.node_count();
  const std::size_t h1 = cfg.horizon + 1;
  Rng rng = Rng::stream(cfg.seed, trial);
  auto state = initial_state(net, cfg.init, cfg.memory);
  DrawVector draws(n, 0), prev(n, 0);
  StepDeltas<double> scratch;
  std::vector<std::uint32_t> reds(n, 0);
  std::uint64_t assignment = 0;
  std::vector<std::uint32_t> prefix(n, 0);

  double u_prev = mean_individual(state);
  acc.susceptibility[0] += u_prev;
  if (!acc.urn.empty())
    for (NodeId i = 0; i < n; ++i) acc.urn[i * h1] += state.red_mass(i) / state.total_mass(i);

  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    prev.swap(draws);
    sample_step_inplace(state, net, cfg.schedule, rng, draws, scratch);
    for (NodeId i = 0; i < n; ++i) {
      if (!draws[i]) continue;
      ++reds[i];
      ++acc.infected[i * h1 + t];
      if (!acc.pairs.empty() && t >= 2 && prev[i]) ++acc.pairs[i * h1 + t];
      if (t <= cfg.collect.assignment_horizon) assignment |= std::uint64_t{1} << ((t - 1) * n + i);
      if (t <= cfg.collect.node_prefix) prefix[i] |= 1u << (t - 1);
    }
    const double u = mean_individual(state);
    acc.susceptibility[t] += u;
    if (!acc.urn.empty())
      for (NodeId i = 0; i < n; ++i) acc.urn[i * h1 + t] += state.red_mass(i) / state.total_mass(i);
    if (!acc.inc_sum.empty()) {
      acc.inc_sum[t] += u - u_prev;
      acc.inc_sq[t] += (u - u_prev) * (u - u_prev);
    }
    u_prev = u;
  }
  if (!acc.assignments.empty()) ++acc.assignments[assignment];
  if (!acc.prefixes.empty())
    for (NodeId i = 0; i < n; ++i) ++acc.prefixes[(i << cfg.collect.node_prefix) + prefix[i]];
  if (avg)
    for (NodeId i = 0; i < n; ++i)
      avg[i * avg_stride] = static_cast<double>(reds[i]) / static_cast<double>(cfg.horizon);
}

}  // namespace

void RunConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::kInvalidParameter, "trials must be >= 1");
  if (horizon < 1) throw Error(ErrorCode::kInvalidParameter, "horizon must be >= 1");
  if (init.node_count() != network.node_count()) {
    throw Error(ErrorCode::kSizeMismatch, "urn init length differs from node count");
  }
  init.validate();
  schedule.validate(network.node_count(), horizon);
  if (collect.assignment_horizon > 0 &&
      (collect.assignment_horizon > horizon ||
       network.node_count() * collect.assignment_horizon > kDefaultEnumerationCap)) {
    throw Error(ErrorCode::kCapExceeded, "assignment counting limited to N k <= 24 and k <= horizon");
  }
  if (collect.node_prefix > 16 || collect.node_prefix > horizon) {
    throw Error(ErrorCode::kInvalidParameter, "node prefix length must be <= 16 and <= horizon");
  }
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("POLYA_NET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

TrialStatistics run_trials(const RunConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.network.node_count();
  const std::size_t h1 = cfg.horizon + 1;
  const std::size_t blocks = (cfg.trials + kBlockTrials - 1) / kBlockTrials;

  TrialStatistics st;
  st.trials = cfg.trials;
  st.horizon = cfg.horizon;
  st.node_count = n;
  std::vector<double> averages;
  if (cfg.collect.sample_averages) averages.assign(n * cfg.trials, 0.0);

  Accumulator total(cfg);
  std::mutex mu;
  std::map<std::size_t, Accumulator> pending;
  std::size_t next_merge = 0;
  std::atomic<std::size_t> next_block{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= blocks) return;
      Accumulator acc(cfg);
      const std::size_t end = std::min(cfg.trials, (b + 1) * kBlockTrials);
      for (std::size_t k = b * kBlockTrials; k < end; ++k) {
        run_one(cfg, k, acc, averages.empty() ? nullptr : averages.data() + k, cfg.trials);
      }
      std::lock_guard<std::mutex> lock(mu);
      pending.emplace(b, std::move(acc));
      for (auto it = pending.find(next_merge); it != pending.end(); it = pending.find(next_merge)) {
        total.merge(it->second);
        pending.erase(it);
        ++next_merge;
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(cfg.threads ? cfg.threads : default_thread_count(), blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const double trials = static_cast<double>(cfg.trials);
  st.mean_infection.assign(h1, 0.0);
  st.node_infection.assign(n, std::vector<double>(h1, 0.0));
  for (NodeId i = 0; i < n; ++i) {
    for (std::size_t t = 1; t < h1; ++t) {
      st.node_infection[i][t] = static_cast<double>(total.infected[i * h1 + t]) / trials;
    }
  }
  for (std::size_t t = 1; t < h1; ++t) {
    std::uint64_t c = 0;
    for (NodeId i = 0; i < n; ++i) c += total.infected[i * h1 + t];
    st.mean_infection[t] = static_cast<double>(c) / (trials * static_cast<double>(n));
  }
  st.mean_susceptibility.resize(h1);
  for (std::size_t t = 0; t < h1; ++t) st.mean_susceptibility[t] = total.susceptibility[t] / trials;
  if (cfg.collect.pair_freq) {
    st.pair_freq.assign(n, std::vector<double>(h1, 0.0));
    for (NodeId i = 0; i < n; ++i)
      for (std::size_t t = 2; t < h1; ++t)
        st.pair_freq[i][t] = static_cast<double>(total.pairs[i * h1 + t]) / trials;
  }
  if (cfg.collect.sample_averages) {
    st.sample_averages.resize(n);
    for (NodeId i = 0; i < n; ++i)
      st.sample_averages[i].assign(averages.begin() + static_cast<std::ptrdiff_t>(i * cfg.trials),
                                   averages.begin() + static_cast<std::ptrdiff_t>((i + 1) * cfg.trials));
  }
  if (cfg.collect.node_urn) {
    st.node_urn_mean.assign(n, std::vector<double>(h1, 0.0));
    for (NodeId i = 0; i < n; ++i)
      for (std::size_t t = 0; t < h1; ++t) st.node_urn_mean[i][t] = total.urn[i * h1 + t] / trials;
  }
  if (cfg.collect.increments) {
    st.increment_mean.assign(h1, 0.0);
    st.increment_variance.assign(h1, 0.0);
    for (std::size_t t = 1; t < h1; ++t) {
      const double m = total.inc_sum[t] / trials;
      st.increment_mean[t] = m;
      if (cfg.trials > 1) {
        st.increment_variance[t] =
            std::max(0.0, (total.inc_sq[t] - trials * m * m) / (trials - 1));
      }
    }
  }
  st.assignment_counts = std::move(total.assignments);
  if (cfg.collect.node_prefix > 0) {
    const std::size_t width = std::size_t{1} << cfg.collect.node_prefix;
    st.node_prefix_counts.resize(n);
    for (NodeId i = 0; i < n; ++i)
      st.node_prefix_counts[i].assign(total.prefixes.begin() + static_cast<std::ptrdiff_t>(i * width),
                                      total.prefixes.begin() + static_cast<std::ptrdiff_t>((i + 1) * width));
  }
  return st;
}

DrawRecord simulate_record(const RunConfig& cfg, std::uint64_t trial) {
  cfg.validate();
  Rng rng = Rng::stream(cfg.seed, trial);
  auto state = initial_state(cfg.network, cfg.init, cfg.memory);
  DrawRecord record;
  StepDeltas<double> scratch;
  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    DrawVector draws;
    sample_step_inplace(state, cfg.network, cfg.schedule, rng, draws, scratch);
    record.push_back(std::move(draws));
  }
  return record;
}

Histogram histogram(std::span<const double> samples, std::size_t bins) {
  if (bins == 0 || samples.size() < bins) {
    throw Error(ErrorCode::kInvalidParameter, "histogram needs at least `bins` samples");
  }
  Histogram h;
  std::vector<std::size_t> counts(bins, 0);
  for (double x : samples) {
    if (!(x >= 0 && x <= 1)) throw Error(ErrorCode::kDomainError, "histogram samples must lie in [0, 1]");
    auto b = static_cast<std::size_t>(x * static_cast<double>(bins));
    ++counts[std::min(b, bins - 1)];
  }
  const double width = 1.0 / static_cast<double>(bins);
  const double total = static_cast<double>(samples.size());
  for (std::size_t b = 0; b < bins; ++b) {
    h.left.push_back(static_cast<double>(b) * width);
    h.right.push_back(static_cast<double>(b + 1) * width);
    h.density.push_back(static_cast<double>(counts[b]) / (total * width));
  }
  return h;
}

double ks_fit(std::span<const double> samples, const BetaParams& params) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidParameter, "KS needs samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = beta_cdf(params, sorted[k]);
    d = std::max({d, f - static_cast<double>(k) / n, static_cast<double>(k + 1) / n - f});
  }
  return d;
}

StationarityReport stationarity_diagnostic(const TrialStatistics& stats, NodeId node,
                                           std::size_t window) {
  if (stats.pair_freq.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "pair frequencies were not collected");
  }
  if (node >= stats.node_count) throw Error(ErrorCode::kIndexOutOfRange, "node out of range");
  if (window == 0) window = std::max<std::size_t>(1, stats.horizon / 5);
  if (window + 2 > stats.horizon + 1) {
    throw Error(ErrorCode::kInvalidParameter, "window longer than the available pair series");
  }
  const auto& pf = stats.pair_freq[node];
  StationarityReport r;
  r.window = window;
  double sum = 0;
  for (std::size_t t = stats.horizon - window + 1; t <= stats.horizon; ++t) {
    r.max_deviation = std::max(r.max_deviation, std::fabs(pf[t] - pf[t - 1]));
    sum += pf[t];
  }
  r.settled_value = sum / static_cast<double>(window);
  return r;
}

ResidualSeries martingale_residual(RunConfig cfg) {
  const auto delta = cfg.schedule.uniform_value();
  if (!delta) {
    throw Error(ErrorCode::kHypothesisViolation, "needs one constant Delta_r = Delta_b");
  }
  if (classify(cfg.network) == Topology::kIrregular) {
    throw Error(ErrorCode::kHypothesisViolation, "needs a regular network");
  }
  if (cfg.memory.is_finite()) throw Error(ErrorCode::kHypothesisViolation, "needs infinite memory");
  for (NodeId i = 1; i < cfg.init.node_count(); ++i) {
    if (cfg.init.total(i) != cfg.init.total(0)) {
      throw Error(ErrorCode::kHypothesisViolation, "needs equal initial totals T_i");
    }
  }
  cfg.collect.increments = true;
  const auto st = run_trials(cfg);
  ResidualSeries r;
  r.mean = st.increment_mean;
  r.std_error.resize(st.increment_variance.size());
  for (std::size_t t = 0; t < r.std_error.size(); ++t) {
    r.std_error[t] = std::sqrt(st.increment_variance[t] / static_cast<double>(st.trials));
  }
  return r;
}

Trend linear_trend(std::span<const double> series, std::size_t first, std::size_t last) {
  if (last >= series.size() || last < first + 2) {
    throw Error(ErrorCode::kInvalidParameter, "trend needs at least three points in range");
  }
  const double m = static_cast<double>(last - first + 1);
  double tx = 0, ty = 0;
  for (std::size_t t = first; t <= last; ++t) {
    tx += static_cast<double>(t);
    ty += series[t];
  }
  tx /= m;
  ty /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t t = first; t <= last; ++t) {
    const double dx = static_cast<double>(t) - tx;
    sxx += dx * dx;
    sxy += dx * (series[t] - ty);
  }
  Trend tr;
  tr.slope = sxy / sxx;
  double rss = 0;
  for (std::size_t t = first; t <= last; ++t) {
    const double e = series[t] - ty - tr.slope * (static_cast<double>(t) - tx);
    rss += e * e;
  }
  tr.std_error = std::sqrt(rss / (m - 2) / sxx);
  return tr;
}

InfectionRate infection_rate(const RunConfig& cfg, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidParameter, "infection rate needs n >= 1");
  if (cfg.network.node_count() * (n - 1) <= kDefaultEnumerationCap) {
    return {average_infection_rate(cfg.network, cfg.init, cfg.schedule, n, cfg.memory), false};
  }
  RunConfig mc = cfg;
  mc.horizon = std::max(mc.horizon, n);
  mc.collect = StatsSelection{};
  mc.collect.sample_averages = false;
  mc.collect.pair_freq = false;
  return {run_trials(mc).mean_infection[n], true};
}

std::string header_line(const OutputHeader& h) {
  return std::string("# polya_net version=") + kVersion + " config_hash=" + h.config_hash +
         " seed=" + std::to_string(h.seed);
}

void write_trajectory_csv(std::ostream& out, const TrialStatistics& stats,
                          const OutputHeader& header, long pair_node) {
  const bool with_pair = pair_node >= 0 && !stats.pair_freq.empty();
  out << header_line(header) << '\n';
  out << "t,I_tilde,U_tilde" << (with_pair ? ",pair_freq" : "") << '\n';
  for (std::size_t t = 1; t <= stats.horizon; ++t) {
    out << t << ',' << format_scalar(stats.mean_infection[t]) << ','
        << format_scalar(stats.mean_susceptibility[t]);
    if (with_pair) out << ',' << format_scalar(stats.pair_freq[static_cast<std::size_t>(pair_node)][t]);
    out << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h, const OutputHeader& header) {
  out << header_line(header) << '\n';
  out << "bin_left,bin_right,density\n";
  for (std::size_t b = 0; b < h.density.size(); ++b) {
    out << format_scalar(h.left[b]) << ',' << format_scalar(h.right[b]) << ','
        << format_scalar(h.density[b]) << '\n';
  }
}

}  // namespace polya
