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

#ifndef POLYA_GRAPH_HPP_
#define POLYA_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polya {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

struct Neighborhood {
  std::vector<NodeId> open;    // strict neighbors, sorted
  std::vector<NodeId> closed;  // open plus the node itself, sorted
};

enum class Topology { kComplete, kRegular, kIrregular };

const char* topology_name(Topology t);

/// Undirected, simple, connected graph on nodes 0..N-1.
///
/// Immutable after construction. Neighborhoods are precomputed, and the dense
/// adjacency matrix is kept because every graph used here is small.
class Network {
 public:
  // Throws Error{kSelfLoop, kIndexOutOfRange, kDisconnected,
  // kInvalidParameter}. Duplicate and reversed edges are merged.
  Network(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Sorted, each pair stored as (min, max).
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(NodeId i, NodeId j) const { return adjacency_[i * n_ + j] != 0; }
  std::size_t degree(NodeId i) const { return hoods_[i].open.size(); }
  const Neighborhood& neighborhood(NodeId i) const { return hoods_[i]; }
  const std::vector<NodeId>& neighbors(NodeId i) const { return hoods_[i].open; }
  const std::vector<NodeId>& closed_neighborhood(NodeId i) const { return hoods_[i].closed; }

  std::size_t max_degree() const;
  double average_degree() const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<Neighborhood> hoods_;
};

Network build_network(std::size_t node_count, std::span<const Edge> edges);

Topology classify(const Network& net);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

// Spectral radius of the adjacency matrix. Iterates on A + I from the
// all-ones vector so that bipartite graphs (where -lambda_max is also an
// eigenvalue) still converge; stops when the residual ||A v - lambda v|| of
// the unit iterate drops below the tolerance, which bounds the eigenvalue
// error for a symmetric matrix. Throws Error{kNonConvergence}.
double largest_eigenvalue(const Network& net, const PowerIterationOptions& opts = {});

// Generators.
Network complete_graph(std::size_t n);
Network cycle_graph(std::size_t n);
Network star_graph(std::size_t n);  // node 0 is the hub
Network path_graph(std::size_t n);

/// Preferential attachment: start from K_m, then each new node connects to m
/// distinct existing nodes drawn with probability proportional to current
/// degree, without replacement. When every candidate has degree zero (only
/// possible for m = 1 on the first step) the draw is uniform. Produces
/// m(m-1)/2 + m(N-m) edges.
Network barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

// Edge-list text format: first line N, then one "i j" pair per line.
// Blank lines and lines starting with '#' are ignored.
Network read_edge_list(std::istream& in);
Network load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Network& net);

}  // namespace polya

#endif  // POLYA_GRAPH_HPP_
