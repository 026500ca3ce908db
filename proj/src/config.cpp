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

#include "polya/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polya/scalar.hpp"

namespace polya {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field '" + field + "': " + what);
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kValidationError, what);
}

// Numbers may be written as JSON strings or JSON numbers; both are kept as
// their decimal text.
void read_number(const json& obj, const char* key, const std::string& path, std::string& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  if (it->is_string()) {
    out = it->get<std::string>();
  } else if (it->is_number()) {
    out = it->dump();
  } else {
    parse_fail(path + key, "expected a decimal string or number");
  }
}

void read_list(const json& obj, const char* key, const std::string& path,
               std::vector<std::string>& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  if (!it->is_array()) parse_fail(path + key, "expected an array");
  out.clear();
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& v = (*it)[k];
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number()) {
      out.push_back(v.dump());
    } else {
      parse_fail(path + key + "[" + std::to_string(k) + "]", "expected a decimal string or number");
    }
  }
}

const json& section(const json& j, const char* key) {
  static const json empty = json::object();
  auto it = j.find(key);
  if (it == j.end()) return empty;
  if (!it->is_object()) parse_fail(key, "expected an object");
  return *it;
}

Rational checked(const std::string& s, const char* field) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    invalid(std::string(field) + " is not a decimal number: '" + s + "'");
  }
}

}  // namespace

json serialize(const ExperimentConfig& c) {
  json j;
  j["graph"] = {{"kind", c.graph.kind},     {"path", c.graph.path}, {"nodes", c.graph.nodes},
                {"attach", c.graph.attach}, {"seed", c.graph.seed}};
  j["urns"] = {{"red", c.red}, {"black", c.black}};
  j["schedule"] = {{"delta_red", c.delta_red}, {"delta_black", c.delta_black}};
  j["run"] = {{"horizon", c.horizon}, {"trials", c.trials},   {"seed", c.seed},
              {"memory", c.memory},   {"threads", c.threads}};
  j["fit"] = {{"node", c.node},
              {"delta_max", c.delta_max},
              {"grid_points", c.grid_points},
              {"width", c.width}};
  j["sis"] = {{"beta", c.beta}, {"delta_sis", c.delta_sis}, {"init", c.sis_init}};
  return j;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) parse_fail("<root>", "expected an object");
  ExperimentConfig c;
  const json& g = section(j, "graph");
  if (auto it = g.find("kind"); it != g.end()) {
    if (!it->is_string()) parse_fail("graph.kind", "expected a string");
    c.graph.kind = it->get<std::string>();
  }
  if (auto it = g.find("path"); it != g.end()) {
    if (!it->is_string()) parse_fail("graph.path", "expected a string");
    c.graph.path = it->get<std::string>();
  }
  read_number(g, "nodes", "graph.", c.graph.nodes);
  read_number(g, "attach", "graph.", c.graph.attach);
  read_number(g, "seed", "graph.", c.graph.seed);

  const json& u = section(j, "urns");
  read_list(u, "red", "urns.", c.red);
  read_list(u, "black", "urns.", c.black);

  const json& s = section(j, "schedule");
  read_number(s, "delta_red", "schedule.", c.delta_red);
  read_number(s, "delta_black", "schedule.", c.delta_black);

  const json& r = section(j, "run");
  read_number(r, "horizon", "run.", c.horizon);
  read_number(r, "trials", "run.", c.trials);
  read_number(r, "seed", "run.", c.seed);
  read_number(r, "memory", "run.", c.memory);
  read_number(r, "threads", "run.", c.threads);

  const json& f = section(j, "fit");
  read_number(f, "node", "fit.", c.node);
  read_number(f, "delta_max", "fit.", c.delta_max);
  read_number(f, "grid_points", "fit.", c.grid_points);
  read_number(f, "width", "fit.", c.width);

  const json& q = section(j, "sis");
  read_number(q, "beta", "sis.", c.beta);
  read_number(q, "delta_sis", "sis.", c.delta_sis);
  read_list(q, "init", "sis.", c.sis_init);
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) line += text[k] == '\n';
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + e.what());
  }
  return parse_config(j);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidParameter, "cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

// The thread count never changes results, so it is left out.
std::string config_hash(const ExperimentConfig& cfg) {
  json j = serialize(cfg);
  j["run"].erase("threads");
  return fnv1a_hex(j.dump());
}

std::size_t config_size(const std::string& text, const char* field) {
  const Rational v = checked(text, field);
  if (v < 0 || denominator(v) != 1) invalid(std::string(field) + " must be a non-negative integer");
  return numerator(v).convert_to<std::size_t>();
}

double config_double(const std::string& text, const char* field) {
  checked(text, field);
  return parse_double(text);
}

void validate(const ExperimentConfig& c, bool need_urns) {
  static const char* kKinds[] = {"file", "complete", "cycle", "star", "path", "ba"};
  bool known = false;
  for (const char* k : kKinds) known = known || c.graph.kind == k;
  if (!known) invalid("graph.kind must be one of file, complete, cycle, star, path, ba");
  if (c.graph.kind == "file" && c.graph.path.empty()) invalid("graph.path is required for kind file");
  if (c.graph.kind != "file" && config_size(c.graph.nodes, "graph.nodes") == 0) {
    invalid("graph.nodes must be >= 1");
  }
  if (c.graph.kind == "ba") {
    const auto m = config_size(c.graph.attach, "graph.attach");
    if (m < 1 || m >= config_size(c.graph.nodes, "graph.nodes")) {
      invalid("graph.attach must satisfy 1 <= m < nodes");
    }
  }
  config_size(c.graph.seed, "graph.seed");

  if (need_urns) {
    if (c.red.empty() || c.black.empty()) invalid("urns.red and urns.black are required");
    for (const auto& v : c.red) {
      if (checked(v, "red") < 1) invalid("red masses R_i must be >= 1 (every urn starts with positive mass)");
    }
    for (const auto& v : c.black) {
      if (checked(v, "black") < 1) invalid("black masses B_i must be >= 1 (every urn starts with positive mass)");
    }
  }
  if (checked(c.delta_red, "delta_red") < 0) invalid("delta_red must be ≥ 0");
  if (checked(c.delta_black, "delta_black") < 0) invalid("delta_black must be ≥ 0");
  if (config_size(c.horizon, "horizon") < 1) invalid("horizon must be >= 1");
  if (config_size(c.trials, "trials") < 1) invalid("trials must be >= 1");
  config_size(c.seed, "seed");
  config_size(c.memory, "memory");
  config_size(c.threads, "threads");
  config_size(c.node, "node");
  if (!c.delta_max.empty() && checked(c.delta_max, "delta_max") <= 0) invalid("delta_max must be > 0");
  if (config_size(c.grid_points, "grid_points") < 3) invalid("grid_points must be >= 3");
  if (checked(c.width, "width") <= 0) invalid("width must be > 0");
  const Rational beta = checked(c.beta, "beta");
  const Rational cure = checked(c.delta_sis, "delta_sis");
  if (beta < 0 || beta > 1) invalid("beta must lie in [0, 1]");
  if (cure < 0 || cure > 1) invalid("delta_sis must lie in [0, 1]");
  for (const auto& p : c.sis_init) {
    const Rational v = checked(p, "sis.init");
    if (v < 0 || v > 1) invalid("sis.init entries must lie in [0, 1]");
  }
}

Network build_graph(const GraphConfig& g) {
  if (g.kind == "file") return load_edge_list(g.path);
  const std::size_t n = config_size(g.nodes, "graph.nodes");
  if (g.kind == "complete") return complete_graph(n);
  if (g.kind == "cycle") return cycle_graph(n);
  if (g.kind == "star") return star_graph(n);
  if (g.kind == "path") return path_graph(n);
  if (g.kind == "ba") {
    return barabasi_albert(n, config_size(g.attach, "graph.attach"),
                           config_size(g.seed, "graph.seed"));
  }
  invalid("unknown graph.kind '" + g.kind + "'");
}

MemoryMode memory_mode(const ExperimentConfig& cfg) {
  const std::size_t m = config_size(cfg.memory, "memory");
  return m == 0 ? MemoryMode::infinite() : MemoryMode::finite(m);
}

RunConfig run_config(const ExperimentConfig& cfg) {
  Network net = build_graph(cfg.graph);
  const std::size_t n = net.node_count();
  return RunConfig{std::move(net),
                   urn_init<double>(cfg, n),
                   delta_schedule<double>(cfg),
                   memory_mode(cfg),
                   config_size(cfg.horizon, "horizon"),
                   config_size(cfg.trials, "trials"),
                   config_size(cfg.seed, "seed"),
                   StatsSelection{},
                   static_cast<unsigned>(config_size(cfg.threads, "threads"))};
}

SisParams sis_params(const ExperimentConfig& cfg) {
  return {config_double(cfg.beta, "beta"), config_double(cfg.delta_sis, "delta_sis")};
}

KlSearch kl_search(const ExperimentConfig& cfg, double delta_i) {
  KlSearch s = default_kl_search(delta_i);
  if (!cfg.delta_max.empty()) s.delta_max = config_double(cfg.delta_max, "delta_max");
  s.grid_points = static_cast<int>(config_size(cfg.grid_points, "grid_points"));
  s.width = config_double(cfg.width, "width");
  return s;
}

OutputHeader output_header(const ExperimentConfig& cfg) {
  return {config_hash(cfg), config_size(cfg.seed, "seed")};
}

}  // namespace polya
