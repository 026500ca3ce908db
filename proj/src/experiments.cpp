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

#include "polya/experiments.hpp"

#include <limits>
#include <ostream>

#include "polya/config.hpp"
#include "polya/sis.hpp"

namespace polya {

namespace {

constexpr std::uint64_t kMassStream = std::numeric_limits<std::uint64_t>::max();

OutputHeader experiment_header(const nlohmann::json& options, std::uint64_t seed) {
  return {fnv1a_hex(options.dump()), seed};
}

RunConfig base_run(Network net, UrnInit<double> init, DeltaSchedule<double> sched,
                   std::size_t horizon, std::size_t trials, std::uint64_t seed,
                   unsigned threads) {
  RunConfig rc{std::move(net), std::move(init), std::move(sched), MemoryMode::infinite(),
               horizon,        trials,          seed,             StatsSelection{},
               threads};
  rc.collect.sample_averages = false;
  rc.collect.pair_freq = false;
  return rc;
}

BetaFitCase fit_case(std::string label, ModelKind model, double rho, double delta,
                     std::vector<double> samples) {
  BetaFitCase c;
  c.label = std::move(label);
  c.model = model;
  c.rho = rho;
  c.delta = delta;
  c.params = beta_from_polya(rho, delta);
  c.ks = ks_fit(samples, c.params);
  c.samples = std::move(samples);
  return c;
}

// Sample averages of `node` plus both closed-form model fits on a BA network.
std::pair<BetaFitCase, BetaFitCase> ba_cases(const Fig4Options& opt, std::size_t n,
                                             const std::string& tag) {
  Network net = barabasi_albert(n, opt.attach, opt.seed);
  auto init = random_masses(n, opt.seed, opt.max_mass);
  const double rho = rho_for_node(net, init, opt.node);
  const double d2a = model2a_delta(net, init, opt.node, opt.delta);
  const double d2b = model2b_delta(net, init, opt.node, opt.delta);
  RunConfig rc = base_run(net, init, DeltaSchedule<double>::constant(opt.delta), opt.horizon,
                          opt.trials, opt.seed, opt.threads);
  rc.collect.sample_averages = true;
  auto samples = run_trials(rc).sample_averages[opt.node];
  auto a = fit_case(tag + "_IIa", ModelKind::kLargeNetwork, rho, d2a, samples);
  auto b = fit_case(tag + "_IIb", ModelKind::kSmallNetwork, rho, d2b, std::move(samples));
  return {std::move(a), std::move(b)};
}

Fig5Scenario scenario(const Fig5Options& opt, const Network& net, const UrnInit<double>& init,
                      std::string label, double ratio) {
  Fig5Scenario s;
  s.label = std::move(label);
  s.ratio = ratio;
  const auto sched = DeltaSchedule<double>::constant(opt.delta_red, ratio * opt.delta_red);
  RunConfig rc = base_run(net, init, sched, opt.horizon, opt.trials, opt.seed, opt.threads);
  s.infinite = run_trials(rc).mean_infection;
  // Same master seed: the two memory variants share their random streams.
  rc.memory = MemoryMode::finite(opt.memory);
  s.finite = run_trials(rc).mean_infection;

  std::vector<double> p0;
  for (NodeId i = 0; i < init.node_count(); ++i) p0.push_back(init.red[i] / init.total(i));
  s.sis = sis_run(net, p0, {opt.beta, ratio * opt.beta}, opt.horizon).mean;
  s.infinite_trend = linear_trend(s.infinite, opt.trend_first, opt.horizon);
  s.finite_trend = linear_trend(s.finite, opt.trend_first, opt.horizon);
  return s;
}

}  // namespace

UrnInit<double> random_masses(std::size_t node_count, std::uint64_t seed, unsigned max_mass) {
  Rng rng = Rng::stream(seed, kMassStream);
  UrnInit<double> init;
  for (std::size_t i = 0; i < node_count; ++i) {
    init.red.push_back(static_cast<double>(1 + rng.below(max_mass)));
    init.black.push_back(static_cast<double>(1 + rng.below(max_mass)));
  }
  return init;
}

nlohmann::json Fig2Options::to_json() const {
  return {{"experiment", "fig2"}, {"nodes", nodes},   {"attach", attach}, {"trials", trials},
          {"horizon", horizon},   {"window", window}, {"red", red},       {"black", black},
          {"delta", delta},       {"node", node},     {"seed", seed}};
}

Fig2Result run_fig2(const Fig2Options& opt) {
  Network net = barabasi_albert(opt.nodes, opt.attach, opt.seed);
  RunConfig rc = base_run(std::move(net), UrnInit<double>::uniform(opt.nodes, opt.red, opt.black),
                          DeltaSchedule<double>::constant(opt.delta), opt.horizon, opt.trials,
                          opt.seed, opt.threads);
  rc.collect.pair_freq = true;
  Fig2Result r;
  r.stats = run_trials(rc);
  r.report = stationarity_diagnostic(r.stats, opt.node, opt.window);
  return r;
}

void write_fig2_csv(std::ostream& out, const Fig2Options& opt, const Fig2Result& r) {
  write_trajectory_csv(out, r.stats, experiment_header(opt.to_json(), opt.seed),
                       static_cast<long>(opt.node));
}

nlohmann::json Fig4Options::to_json() const {
  return {{"experiment", "fig4"}, {"trials", trials},     {"horizon", horizon},
          {"small_nodes", small_nodes}, {"large_nodes", large_nodes}, {"attach", attach},
          {"delta", delta},       {"max_mass", max_mass}, {"node", node},
          {"bins", bins},         {"seed", seed}};
}

Fig4Result run_fig4(const Fig4Options& opt) {
  Fig4Result r;
  {
    // ρ = 1/2, δ = Δ / T = 1/2.
    RunConfig rc = base_run(Network(1, {}), UrnInit<double>::uniform(1, 1.0, 1.0),
                            DeltaSchedule<double>::constant(1.0), opt.horizon, opt.trials,
                            opt.seed, opt.threads);
    rc.collect.sample_averages = true;
    r.classical = fit_case("classical", ModelKind::kComputational, 0.5, 0.5,
                           run_trials(rc).sample_averages[0]);
  }
  auto small = ba_cases(opt, opt.small_nodes, "ba" + std::to_string(opt.small_nodes));
  r.small_ba = std::move(small.second);
  r.small_ba_alt = std::move(small.first);
  auto large = ba_cases(opt, opt.large_nodes, "ba" + std::to_string(opt.large_nodes));
  r.large_ba = std::move(large.first);
  r.large_ba_alt = std::move(large.second);
  return r;
}

void write_fig4_csv(std::ostream& out, const Fig4Options& opt, const BetaFitCase& c,
                    std::size_t bins) {
  auto options = opt.to_json();
  options["case"] = c.label;
  write_histogram_csv(out, histogram(c.samples, bins), experiment_header(options, opt.seed));
}

nlohmann::json Fig5Options::to_json() const {
  return {{"experiment", "fig5"},   {"nodes", nodes},         {"attach", attach},
          {"trials", trials},       {"horizon", horizon},     {"memory", memory},
          {"delta_red", delta_red}, {"beta", beta},           {"max_mass", max_mass},
          {"trend_first", trend_first}, {"seed", seed}};
}

Fig5Result run_fig5(const Fig5Options& opt) {
  Network net = barabasi_albert(opt.nodes, opt.attach, opt.seed);
  const auto init = random_masses(opt.nodes, opt.seed, opt.max_mass);
  Fig5Result r;
  r.lambda_max = largest_eigenvalue(net);
  r.low = scenario(opt, net, init, "low", r.lambda_max / 10);
  r.met = scenario(opt, net, init, "met", 1.01 * r.lambda_max);
  r.same = scenario(opt, net, init, "same", 1.0);
  return r;
}

void write_fig5_csv(std::ostream& out, const Fig5Options& opt, const Fig5Scenario& s) {
  auto options = opt.to_json();
  options["scenario"] = s.label;
  out << header_line(experiment_header(options, opt.seed)) << '\n';
  out << "t,I_tilde_infinite,I_tilde_finite,sis_mean\n";
  for (std::size_t t = 1; t <= opt.horizon; ++t) {
    out << t << ',' << format_scalar(s.infinite[t]) << ',' << format_scalar(s.finite[t]) << ','
        << format_scalar(s.sis[t]) << '\n';
  }
}

}  // namespace polya
