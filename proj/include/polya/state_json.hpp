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

#ifndef POLYA_STATE_JSON_HPP_
#define POLYA_STATE_JSON_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "polya/contagion.hpp"

namespace polya {

// Snapshot layout:
//   {"time": n, "red_mass": ["..."], "total_mass": ["..."],
//    "memory": "infinite" | {"finite": M, "window_red": [...], "window_total": [...]}}
// Masses are strings so rational states survive exactly.
template <typename Scalar>
nlohmann::json state_to_json(const NetworkState<Scalar>& state) {
  auto strings = [](const auto& get, std::size_t n) {
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) a.push_back(format_scalar(get(i)));
    return a;
  };
  const std::size_t n = state.node_count();
  nlohmann::json j;
  j["time"] = state.time();
  j["red_mass"] = strings([&](std::size_t i) { return state.red_mass(i); }, n);
  j["total_mass"] = strings([&](std::size_t i) { return state.total_mass(i); }, n);
  if (state.memory().is_finite()) {
    const auto& wr = state.window_red_buffer();
    const auto& wt = state.window_total_buffer();
    j["memory"] = {{"finite", state.memory().window},
                   {"window_red", strings([&](std::size_t k) { return wr[k]; }, wr.size())},
                   {"window_total", strings([&](std::size_t k) { return wt[k]; }, wt.size())}};
  } else {
    j["memory"] = "infinite";
  }
  return j;
}

template <typename Scalar>
NetworkState<Scalar> state_from_json(const nlohmann::json& j) {
  auto scalars = [](const nlohmann::json& a) {
    std::vector<Scalar> out;
    for (const auto& x : a) out.push_back(parse_scalar<Scalar>(x.get<std::string>()));
    return out;
  };
  try {
    MemoryMode mode;
    std::vector<Scalar> wr, wt;
    const auto& mem = j.at("memory");
    if (mem.is_object()) {
      mode = MemoryMode::finite(mem.at("finite").get<std::size_t>());
      wr = scalars(mem.at("window_red"));
      wt = scalars(mem.at("window_total"));
    } else if (mem.get<std::string>() != "infinite") {
      throw Error(ErrorCode::kParseError, "memory must be \"infinite\" or {\"finite\": M}");
    }
    return NetworkState<Scalar>::restore(j.at("time").get<std::size_t>(),
                                         scalars(j.at("red_mass")), scalars(j.at("total_mass")),
                                         mode, std::move(wr), std::move(wt));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("state snapshot: ") + e.what());
  }
}

}  // namespace polya

#endif  // POLYA_STATE_JSON_HPP_
