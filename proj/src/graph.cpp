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

#include "polya/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "polya/errors.hpp"
#include "polya/rng.hpp"

namespace polya {

const char* topology_name(Topology t) {
  switch (t) {
    case Topology::kComplete: return "complete";
    case Topology::kRegular: return "regular";
    case Topology::kIrregular: return "irregular";
  }
  return "unknown";
}

Network::Network(std::size_t node_count, std::span<const Edge> edges) : n_(node_count) {
  if (n_ == 0) throw Error(ErrorCode::kInvalidParameter, "network needs at least one node");

  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a >= n_ || b >= n_) {
      throw Error(ErrorCode::kIndexOutOfRange, "edge (" + std::to_string(a) + "," +
                                                   std::to_string(b) + ") outside [0," +
                                                   std::to_string(n_) + ")");
    }
    if (a == b) throw Error(ErrorCode::kSelfLoop, "self-loop at node " + std::to_string(a));
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adjacency_.assign(n_ * n_, 0);
  hoods_.resize(n_);
  for (auto [a, b] : edges_) {
    adjacency_[a * n_ + b] = adjacency_[b * n_ + a] = 1;
    hoods_[a].open.push_back(b);
    hoods_[b].open.push_back(a);
  }
  for (NodeId i = 0; i < n_; ++i) {
    auto& h = hoods_[i];
    std::sort(h.open.begin(), h.open.end());
    h.closed = h.open;
    h.closed.insert(std::lower_bound(h.closed.begin(), h.closed.end(), i), i);
  }

  // BFS from node 0.
  std::vector<char> seen(n_, 0);
  std::vector<NodeId> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (NodeId j : hoods_[queue[head]].open) {
      if (!seen[j]) {
        seen[j] = 1;
        queue.push_back(j);
      }
    }
  }
  if (queue.size() != n_) {
    const auto missing = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
    throw Error(ErrorCode::kDisconnected,
                "node " + std::to_string(missing) + " is not reachable from node 0");
  }
}

std::size_t Network::max_degree() const {
  std::size_t d = 0;
  for (const auto& h : hoods_) d = std::max(d, h.open.size());
  return d;
}

double Network::average_degree() const {
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_);
}

Network build_network(std::size_t node_count, std::span<const Edge> edges) {
  return Network(node_count, edges);
}

Topology classify(const Network& net) {
  const std::size_t n = net.node_count();
  bool regular = true;
  for (NodeId i = 1; i < n; ++i) regular = regular && net.degree(i) == net.degree(0);
  if (!regular) return Topology::kIrregular;
  return net.degree(0) + 1 == n ? Topology::kComplete : Topology::kRegular;
}

double largest_eigenvalue(const Network& net, const PowerIterationOptions& opts) {
  if (!(opts.tolerance > 0)) throw Error(ErrorCode::kInvalidParameter, "tolerance must be > 0");
  const std::size_t n = net.node_count();
  if (n == 1) return 0.0;

  auto multiply = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (NodeId i = 0; i < n; ++i) {
      double s = 0;
      for (NodeId j : net.neighbors(i)) s += v[j];
      out[i] = s;
    }
  };
  auto normalize = [](std::vector<double>& v) {
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= norm;
  };

  std::vector<double> v(n, 1.0), av(n), next(n);
  normalize(v);
  for (int it = 0; it < opts.max_iterations; ++it) {
    multiply(v, av);
    const double lambda = std::inner_product(v.begin(), v.end(), av.begin(), 0.0);
    double residual = 0;
    for (NodeId i = 0; i < n; ++i) residual += (av[i] - lambda * v[i]) * (av[i] - lambda * v[i]);
    if (std::sqrt(residual) < opts.tolerance) return lambda;
    for (NodeId i = 0; i < n; ++i) next[i] = av[i] + v[i];
    normalize(next);
    v.swap(next);
  }
  throw Error(ErrorCode::kNonConvergence,
              "power iteration did not converge in " + std::to_string(opts.max_iterations) +
                  " iterations");
}

Network complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Network(n, e);
}

Network cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  if (n == 2) e.emplace_back(0, 1);
  if (n >= 3)
    for (NodeId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Network(n, e);
}

Network star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(0, i);
  return Network(n, e);
}

Network path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Network(n, e);
}

Network barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0 || m >= n) {
    throw Error(ErrorCode::kInvalidParameter,
                "barabasi_albert needs 1 <= m < N (got N=" + std::to_string(n) +
                    ", m=" + std::to_string(m) + ")");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::uint64_t> degree(n, 0);
  for (NodeId i = 0; i < m; ++i) {
    for (NodeId j = i + 1; j < m; ++j) {
      edges.emplace_back(i, j);
      ++degree[i];
      ++degree[j];
    }
  }

  std::vector<NodeId> candidates;
  std::vector<NodeId> chosen;
  for (NodeId v = m; v < n; ++v) {
    candidates.resize(v);
    std::iota(candidates.begin(), candidates.end(), NodeId{0});
    chosen.clear();
    for (std::size_t k = 0; k < m; ++k) {
      std::uint64_t total = 0;
      for (NodeId c : candidates) total += degree[c];
      std::size_t pick;
      if (total == 0) {
        pick = static_cast<std::size_t>(rng.below(candidates.size()));
      } else {
        std::uint64_t r = rng.below(total);
        pick = 0;
        while (r >= degree[candidates[pick]]) r -= degree[candidates[pick++]];
      }
      chosen.push_back(candidates[pick]);
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    for (NodeId u : chosen) {
      edges.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  }
  return Network(n, edges);
}

Network read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParseError, "edge list line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n) || n < 1) fail("expected a positive node count");
    } else {
      long long a, b;
      if (!(ls >> a >> b)) fail("expected 'i j'");
      if (a < 0 || b < 0) fail("negative node index");
      edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    std::string rest;
    if (ls >> rest) fail("unexpected trailing token '" + rest + "'");
  }
  if (n < 0) throw Error(ErrorCode::kParseError, "edge list is empty");
  return Network(static_cast<std::size_t>(n), edges);
}

Network load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidParameter, "cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Network& net) {
  out << net.node_count() << '\n';
  for (auto [a, b] : net.edges()) out << a << ' ' << b << '\n';
}

}  // namespace polya
