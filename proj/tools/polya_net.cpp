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

// polya_net: command-line front end.
//
// Exit status: 0 success, 1 usage or configuration error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "polya/approx.hpp"
#include "polya/config.hpp"
#include "polya/exact.hpp"
#include "polya/experiments.hpp"
#include "polya/montecarlo.hpp"
#include "polya/sis.hpp"

namespace {

using polya::ExperimentConfig;

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

// Command-line values; each set flag overrides the matching config field.
struct Flags {
  std::string config;
  std::optional<std::string> graph, red, black, delta, delta_red, delta_black, horizon, trials,
      seed, memory, threads, node, beta, delta_sis, sis_init, delta_max;
  std::string output;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config; flags override its fields")
      ->check(CLI::ExistingFile);
  cmd->add_option("--graph", f.graph, "edge-list file (first line N, then 'i j' pairs)");
  cmd->add_option("--red", f.red, "initial red masses R_i, comma separated, or one value for all");
  cmd->add_option("--black", f.black, "initial black masses B_i, same format as --red");
  cmd->add_option("--delta", f.delta, "reinforcement Δ_r = Δ_b");
  cmd->add_option("--delta-red", f.delta_red, "red reinforcement Δ_r");
  cmd->add_option("--delta-black", f.delta_black, "black reinforcement Δ_b");
  cmd->add_option("--horizon", f.horizon, "number of draw steps n");
  cmd->add_option("--seed", f.seed, "master seed (default 0)");
  cmd->add_option("--memory", f.memory, "finite memory window M; 0 = infinite (default)");
  cmd->add_option("--output,-o", f.output, "output file (default stdout)");
}

ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : polya::load_config(f.config);
  if (f.graph) {
    c.graph.kind = "file";
    c.graph.path = *f.graph;
  }
  if (f.red) c.red = split_list(*f.red);
  if (f.black) c.black = split_list(*f.black);
  if (f.delta) c.delta_red = c.delta_black = *f.delta;
  if (f.delta_red) c.delta_red = *f.delta_red;
  if (f.delta_black) c.delta_black = *f.delta_black;
  if (f.horizon) c.horizon = *f.horizon;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.memory) c.memory = *f.memory;
  if (f.threads) c.threads = *f.threads;
  if (f.node) c.node = *f.node;
  if (f.beta) c.beta = *f.beta;
  if (f.delta_sis) c.delta_sis = *f.delta_sis;
  if (f.sis_init) c.sis_init = split_list(*f.sis_init);
  if (f.delta_max) c.delta_max = *f.delta_max;
  return c;
}

// Runs `body` with the chosen output stream.
template <typename Body>
void with_output(const std::string& path, Body&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw polya::Error(polya::ErrorCode::kInvalidParameter, "cannot write '" + path + "'");
  body(out);
}

void cmd_simulate(const Flags& f) {
  const auto c = resolve(f);
  polya::validate(c);
  auto rc = polya::run_config(c);
  const auto node = polya::config_size(c.node, "node");
  rc.collect.sample_averages = false;
  const auto stats = polya::run_trials(rc);
  with_output(f.output, [&](std::ostream& out) {
    polya::write_trajectory_csv(out, stats, polya::output_header(c), static_cast<long>(node));
  });
}

void cmd_enumerate(const Flags& f) {
  const auto c = resolve(f);
  polya::validate(c);
  const auto net = polya::build_graph(c.graph);
  const auto table = polya::enumerate_joint(
      net, polya::urn_init<polya::Rational>(c, net.node_count()),
      polya::delta_schedule<polya::Rational>(c), polya::config_size(c.horizon, "horizon"),
      polya::memory_mode(c));
  with_output(f.output, [&](std::ostream& out) {
    out << polya::header_line(polya::output_header(c)) << '\n';
    polya::write_joint_table_csv(out, table);
  });
}

void cmd_fit(const Flags& f) {
  const auto c = resolve(f);
  polya::validate(c);
  if (c.delta_red != c.delta_black) {
    throw polya::Error(polya::ErrorCode::kValidationError, "fit needs delta_red == delta_black");
  }
  const auto net = polya::build_graph(c.graph);
  const auto init = polya::urn_init<double>(c, net.node_count());
  const auto node = polya::config_size(c.node, "node");
  if (node >= net.node_count()) {
    throw polya::Error(polya::ErrorCode::kValidationError, "node must be < N");
  }
  const double delta = polya::config_double(c.delta_red, "delta_red");
  const auto search =
      polya::kl_search(c, polya::node_correlation(net, init, node, delta));
  const auto r = polya::fit_node(net, init, delta, node, polya::config_size(c.horizon, "horizon"),
                                 polya::kDefaultEnumerationCap, search);
  const auto header = polya::output_header(c);
  nlohmann::json j = {{"node", r.node},
                      {"rho", r.rho},
                      {"delta_hat", r.delta_hat},
                      {"kl", r.kl},
                      {"delta_prime", r.delta_prime},
                      {"delta_star", r.delta_star},
                      {"kl_prime", r.kl_prime},
                      {"kl_star", r.kl_star},
                      {"version", polya::kVersion},
                      {"config_hash", header.config_hash},
                      {"seed", header.seed}};
  with_output(f.output, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

void cmd_sis(const Flags& f) {
  const auto c = resolve(f);
  const bool from_urns = c.sis_init.empty() && (!c.red.empty() || !c.black.empty());
  polya::validate(c, from_urns);
  const auto net = polya::build_graph(c.graph);
  const auto params = polya::sis_params(c);
  std::vector<double> p0;
  if (!c.sis_init.empty()) {
    if (c.sis_init.size() != 1 && c.sis_init.size() != net.node_count()) {
      throw polya::Error(polya::ErrorCode::kValidationError, "sis.init needs 1 or N entries");
    }
    for (std::size_t i = 0; i < net.node_count(); ++i) {
      p0.push_back(polya::parse_double(c.sis_init.size() == 1 ? c.sis_init[0] : c.sis_init[i]));
    }
  } else if (from_urns) {
    const auto init = polya::urn_init<double>(c, net.node_count());
    for (std::size_t i = 0; i < net.node_count(); ++i) p0.push_back(init.red[i] / init.total(i));
  } else {
    p0.assign(net.node_count(), 0.5);
  }
  const auto traj = polya::sis_run(net, p0, params, polya::config_size(c.horizon, "horizon"));
  const double lambda = polya::largest_eigenvalue(net);
  const auto regime = polya::threshold_classify(lambda, params);
  std::cerr << "lambda_max=" << polya::format_scalar(lambda)
            << " regime=" << polya::regime_name(regime) << '\n';
  with_output(f.output, [&](std::ostream& out) {
    out << polya::header_line(polya::output_header(c)) << '\n';
    out << "# lambda_max=" << polya::format_scalar(lambda)
        << " regime=" << polya::regime_name(regime) << '\n';
    out << 't';
    for (std::size_t i = 1; i <= net.node_count(); ++i) out << ",P_" << i;
    out << ",mean\n";
    for (std::size_t t = 0; t < traj.mean.size(); ++t) {
      out << t;
      for (double p : traj.probs[t]) out << ',' << polya::format_scalar(p);
      out << ',' << polya::format_scalar(traj.mean[t]) << '\n';
    }
  });
}

struct GraphGenFlags {
  std::string kind = "complete";
  std::size_t nodes = 0;
  std::size_t attach = 2;
  std::uint64_t seed = 0;
  std::string output;
};

void cmd_graph_gen(const GraphGenFlags& g) {
  polya::GraphConfig gc;
  gc.kind = g.kind;
  gc.nodes = std::to_string(g.nodes);
  gc.attach = std::to_string(g.attach);
  gc.seed = std::to_string(g.seed);
  ExperimentConfig c;
  c.graph = gc;
  polya::validate(c, /*need_urns=*/false);
  const auto net = polya::build_graph(gc);
  with_output(g.output, [&](std::ostream& out) { polya::write_edge_list(out, net); });
}

struct ReproduceFlags {
  std::string figure;
  std::string output_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  unsigned threads = 0;
};

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw polya::Error(polya::ErrorCode::kInvalidParameter, "cannot write " + path.string());
  body(out);
}

void cmd_reproduce(const ReproduceFlags& r) {
  namespace fs = std::filesystem;
  fs::create_directories(r.output_dir);
  const fs::path dir(r.output_dir);
  nlohmann::json summary;
  if (r.figure == "fig2") {
    polya::Fig2Options opt;
    if (r.seed) opt.seed = *r.seed;
    if (r.trials) opt.trials = *r.trials;
    opt.threads = r.threads;
    const auto res = polya::run_fig2(opt);
    write_file(dir / "fig2_trajectory.csv",
               [&](std::ostream& out) { polya::write_fig2_csv(out, opt, res); });
    summary = {{"figure", "fig2"},
               {"options", opt.to_json()},
               {"max_deviation", res.report.max_deviation},
               {"settled_value", res.report.settled_value},
               {"window", res.report.window}};
  } else if (r.figure == "fig4") {
    polya::Fig4Options opt;
    if (r.seed) opt.seed = *r.seed;
    if (r.trials) opt.trials = *r.trials;
    opt.threads = r.threads;
    const auto res = polya::run_fig4(opt);
    summary = {{"figure", "fig4"}, {"options", opt.to_json()}};
    for (const auto* c : {&res.classical, &res.small_ba, &res.small_ba_alt, &res.large_ba,
                          &res.large_ba_alt}) {
      write_file(dir / ("fig4_" + c->label + ".csv"),
                 [&](std::ostream& out) { polya::write_fig4_csv(out, opt, *c, opt.bins); });
      summary["cases"].push_back({{"label", c->label},
                                  {"model", polya::model_kind_name(c->model)},
                                  {"rho", c->rho},
                                  {"delta", c->delta},
                                  {"ks", c->ks}});
    }
  } else if (r.figure == "fig5") {
    polya::Fig5Options opt;
    if (r.seed) opt.seed = *r.seed;
    if (r.trials) opt.trials = *r.trials;
    opt.threads = r.threads;
    const auto res = polya::run_fig5(opt);
    summary = {{"figure", "fig5"}, {"options", opt.to_json()}, {"lambda_max", res.lambda_max}};
    for (const auto* s : {&res.low, &res.met, &res.same}) {
      write_file(dir / ("fig5_" + s->label + ".csv"),
                 [&](std::ostream& out) { polya::write_fig5_csv(out, opt, *s); });
      summary["scenarios"].push_back({{"label", s->label},
                                      {"ratio", s->ratio},
                                      {"infinite_slope", s->infinite_trend.slope},
                                      {"infinite_slope_se", s->infinite_trend.std_error},
                                      {"finite_slope", s->finite_trend.slope},
                                      {"I_10", s->infinite[10]},
                                      {"I_final", s->infinite.back()}});
    }
  }
  std::cout << summary.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Network Polya contagion: simulation, exact enumeration, approximation fits and SIS.\n"
      "Precedence: command-line flags > --config file fields > built-in defaults.\n"
      "POLYA_NET_THREADS sets the default worker count when --threads is absent."};
  app.require_subcommand(1);

  GraphGenFlags gg;
  auto* graph_gen = app.add_subcommand("graph-gen", "write a generated network as an edge list");
  graph_gen->add_option("--kind", gg.kind, "complete, cycle, star, path or ba")->capture_default_str();
  graph_gen->add_option("--nodes", gg.nodes, "number of nodes N")->required();
  graph_gen->add_option("--attach", gg.attach, "BA edges per new node m")->capture_default_str();
  graph_gen->add_option("--seed", gg.seed, "BA generator seed")->capture_default_str();
  graph_gen->add_option("--output,-o", gg.output, "output file (default stdout)");

  Flags sim_flags, enum_flags, fit_flags, sis_flags;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trajectories as CSV");
  add_common(simulate, sim_flags);
  simulate->add_option("--trials", sim_flags.trials, "number of trials");
  simulate->add_option("--threads", sim_flags.threads, "worker threads (default: available cores)");
  simulate->add_option("--node", sim_flags.node, "node whose pair frequency is reported");

  auto* enumerate = app.add_subcommand("enumerate", "exact joint law as CSV (rational arithmetic)");
  add_common(enumerate, enum_flags);

  auto* fit = app.add_subcommand("fit", "fit the Polya approximation models for one node (JSON)");
  add_common(fit, fit_flags);
  fit->add_option("--node", fit_flags.node, "node index");
  fit->add_option("--delta-max", fit_flags.delta_max, "upper end of the KL search (default 10 δ_i)");

  auto* sis = app.add_subcommand("sis", "deterministic SIS recursion as CSV");
  add_common(sis, sis_flags);
  sis->add_option("--beta", sis_flags.beta, "infection probability β");
  sis->add_option("--delta-sis", sis_flags.delta_sis, "recovery probability δ");
  sis->add_option("--init", sis_flags.sis_init, "initial P_i(0); default R_i / T_i, or 0.5 without urn masses");

  ReproduceFlags rep;
  auto* reproduce = app.add_subcommand("reproduce", "run a scaled-down figure experiment");
  reproduce->add_option("figure", rep.figure, "fig2, fig4 or fig5")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig4", "fig5"}));
  reproduce->add_option("--output-dir,-o", rep.output_dir, "directory for CSV files")
      ->capture_default_str();
  reproduce->add_option("--seed", rep.seed, "master seed");
  reproduce->add_option("--trials", rep.trials, "number of trials");
  reproduce->add_option("--threads", rep.threads, "worker threads (default: available cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*graph_gen) cmd_graph_gen(gg);
    if (*simulate) cmd_simulate(sim_flags);
    if (*enumerate) cmd_enumerate(enum_flags);
    if (*fit) cmd_fit(fit_flags);
    if (*sis) cmd_sis(sis_flags);
    if (*reproduce) cmd_reproduce(rep);
  } catch (const polya::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const auto code = e.code();
    return code == polya::ErrorCode::kValidationError || code == polya::ErrorCode::kParseError
               ? kUsage
               : kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return 0;
}
