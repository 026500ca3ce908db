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


// Experiment configuration: JSON in, validated library objects out.
//
// Every numeric field is held as the decimal string it was written as, so a
// config parsed in rational mode keeps its exact values and
// parse(serialize(c)) == c holds without float round-trip issues.

#ifndef POLYA_CONFIG_HPP_
#define POLYA_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "polya/approx.hpp"
#include "polya/contagion.hpp"
#include "polya/graph.hpp"
#include "polya/montecarlo.hpp"
#include "polya/sis.hpp"

namespace polya {

struct GraphConfig {
  // "file", "complete", "cycle", "star", "path" or "ba".
  std::string kind = "file";
  std::string path;        // kind == "file"
  std::string nodes = "0";
  std::string attach = "2";  // BA edges per new node
  std::string seed = "0";    // BA generator seed

  friend bool operator==(const GraphConfig&, const GraphConfig&) = default;
};

struct ExperimentConfig {
  GraphConfig graph;
  // One entry per node, or a single entry applied to every node.
  std::vector<std::string> red;
  std::vector<std::string> black;
  std::string delta_red = "1";
  std::string delta_black = "1";
  std::string horizon = "1";
  std::string trials = "1";
  std::string seed = "0";
  std::string memory = "0";  // 0 = infinite
  std::string threads = "0";  // 0 = default_thread_count()
  // fit
  std::string node = "0";
  std::string delta_max;  // empty = 10 δ_i
  std::string grid_points = "200";
  std::string width = "1e-6";
  // sis
  std::string beta = "0";
  std::string delta_sis = "0";
  std::vector<std::string> sis_init;  // empty = R_i / T_i

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json serialize(const ExperimentConfig& cfg);

// Throws Error{kParseError} naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);

// Throws Error{kParseError} with the line of a JSON syntax error.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

// fnv1a_hex of the canonical serialization, without run.threads.
std::string config_hash(const ExperimentConfig& cfg);

// Checks every field a command may use; throws Error{kValidationError}.
// Urn masses are only required when `need_urns` is set.
void validate(const ExperimentConfig& cfg, bool need_urns = true);

Network build_graph(const GraphConfig& g);

std::size_t config_size(const std::string& text, const char* field);
double config_double(const std::string& text, const char* field);

template <typename Scalar>
UrnInit<Scalar> urn_init(const ExperimentConfig& cfg, std::size_t node_count) {
  auto expand = [&](const std::vector<std::string>& v, const char* field) {
    if (v.size() != 1 && v.size() != node_count) {
      throw Error(ErrorCode::kValidationError,
                  std::string(field) + " needs 1 or " + std::to_string(node_count) + " entries");
    }
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < node_count; ++i) {
      out.push_back(parse_scalar<Scalar>(v.size() == 1 ? v[0] : v[i]));
    }
    return out;
  };
  return {expand(cfg.red, "red"), expand(cfg.black, "black")};
}

template <typename Scalar>
DeltaSchedule<Scalar> delta_schedule(const ExperimentConfig& cfg) {
  return DeltaSchedule<Scalar>::constant(parse_scalar<Scalar>(cfg.delta_red),
                                         parse_scalar<Scalar>(cfg.delta_black));
}

MemoryMode memory_mode(const ExperimentConfig& cfg);
RunConfig run_config(const ExperimentConfig& cfg);
SisParams sis_params(const ExperimentConfig& cfg);
KlSearch kl_search(const ExperimentConfig& cfg, double delta_i);
OutputHeader output_header(const ExperimentConfig& cfg);

}  // namespace polya

#endif  // POLYA_CONFIG_HPP_
