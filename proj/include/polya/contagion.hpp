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

#ifndef POLYA_CONTAGION_HPP_
#define POLYA_CONTAGION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polya/errors.hpp"
#include "polya/graph.hpp"
#include "polya/rng.hpp"
#include "polya/scalar.hpp"

// Network Polya contagion: every node owns an urn of red ("infection") and
// black ("healthiness") mass, draws from the pooled urn of its closed
// neighborhood, and reinforces its own urn with the drawn colour.
//
// All types are templated on the mass scalar: Rational for exact identities,
// double for simulation.

namespace polya {

// One entry per node; 1 = red (infected) draw.
using DrawVector = std::vector<std::uint8_t>;
// Time-ordered; record[t - 1] holds the draws of step t.
using DrawRecord = std::vector<DrawVector>;

template <typename Scalar>
struct UrnInit {
  std::vector<Scalar> red;
  std::vector<Scalar> black;

  std::size_t node_count() const { return red.size(); }
  Scalar total(NodeId i) const { return red[i] + black[i]; }

  // Sizes agree and every mass is >= 1.
  void validate() const {
    if (red.size() != black.size()) {
      throw Error(ErrorCode::kSizeMismatch, "red and black initial masses differ in length");
    }
    for (std::size_t i = 0; i < red.size(); ++i) {
      if (red[i] < 1 || black[i] < 1) {
        throw Error(ErrorCode::kInvalidParameter,
                    "initial urn masses must satisfy R_i >= 1 and B_i >= 1 (node " +
                        std::to_string(i) + ")");
      }
    }
  }

  static UrnInit uniform(std::size_t n, Scalar red_mass, Scalar black_mass) {
    return UrnInit{std::vector<Scalar>(n, red_mass), std::vector<Scalar>(n, black_mass)};
  }
};

template <typename To, typename From>
UrnInit<To> convert_init(const UrnInit<From>& init) {
  UrnInit<To> out;
  for (const auto& r : init.red) out.red.push_back(scalar_cast<To>(r));
  for (const auto& b : init.black) out.black.push_back(scalar_cast<To>(b));
  return out;
}

// window == 0 means infinite memory.
struct MemoryMode {
  std::size_t window = 0;

  static MemoryMode infinite() { return {}; }
  static MemoryMode finite(std::size_t m) {
    if (m == 0) throw Error(ErrorCode::kInvalidParameter, "finite memory window must be >= 1");
    return MemoryMode{m};
  }
  bool is_finite() const { return window != 0; }
  friend bool operator==(const MemoryMode&, const MemoryMode&) = default;
};

template <typename Scalar>
struct StepDeltas {
  std::vector<Scalar> red;
  std::vector<Scalar> black;
};

/// Urn state after `time()` draws.
///
/// Holds per-node red mass and total mass; the individual proportion is
/// red/total. In finite-memory mode a ring buffer of the last M per-step
/// additions is kept, and the addition made M steps ago is removed before each
/// new one, so the masses always equal the initial contents plus the
/// contributions of steps n-M+1..n.
template <typename Scalar>
class NetworkState {
 public:
  NetworkState() = default;
  NetworkState(std::vector<Scalar> red, std::vector<Scalar> total, MemoryMode mode)
      : red_(std::move(red)), total_(std::move(total)), mode_(mode) {
    if (red_.size() != total_.size()) {
      throw Error(ErrorCode::kSizeMismatch, "red and total mass vectors differ in length");
    }
    if (mode_.is_finite()) {
      added_red_.assign(mode_.window * red_.size(), Scalar(0));
      added_total_.assign(mode_.window * red_.size(), Scalar(0));
    }
  }

  std::size_t time() const { return time_; }
  std::size_t node_count() const { return red_.size(); }
  const MemoryMode& memory() const { return mode_; }

  const Scalar& red_mass(NodeId i) const { return red_[i]; }
  const Scalar& total_mass(NodeId i) const { return total_[i]; }
  Scalar individual_proportion(NodeId i) const { return red_[i] / total_[i]; }

  // Additions made at step t (1-based) that are still inside the window.
  // Only meaningful in finite mode for time()-M < t <= time().
  std::pair<Scalar, Scalar> window_entry(std::size_t t, NodeId i) const {
    const std::size_t slot = ((t - 1) % mode_.window) * red_.size() + i;
    return {added_red_[slot], added_total_[slot]};
  }

  // Applies one step of draws. No validation; see apply_draws().
  void advance(std::span<const std::uint8_t> draws, const StepDeltas<Scalar>& d) {
    const std::size_t n = red_.size();
    ++time_;
    if (mode_.is_finite()) {
      const std::size_t base = ((time_ - 1) % mode_.window) * n;
      const bool expiring = time_ > mode_.window;
      for (std::size_t i = 0; i < n; ++i) {
        Scalar& ar = added_red_[base + i];
        Scalar& at = added_total_[base + i];
        if (expiring) {
          red_[i] -= ar;
          total_[i] -= at;
        }
        if (draws[i]) {
          ar = d.red[i];
          at = d.red[i];
        } else {
          ar = Scalar(0);
          at = d.black[i];
        }
        red_[i] += ar;
        total_[i] += at;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (draws[i]) {
          red_[i] += d.red[i];
          total_[i] += d.red[i];
        } else {
          total_[i] += d.black[i];
        }
      }
    }
  }

  // Restores a snapshot; used by deserialization.
  static NetworkState restore(std::size_t time, std::vector<Scalar> red, std::vector<Scalar> total,
                              MemoryMode mode, std::vector<Scalar> window_red,
                              std::vector<Scalar> window_total) {
    NetworkState s(std::move(red), std::move(total), mode);
    s.time_ = time;
    if (mode.is_finite()) {
      if (window_red.size() != s.added_red_.size() || window_total.size() != s.added_total_.size()) {
        throw Error(ErrorCode::kSizeMismatch, "memory window buffer has the wrong size");
      }
      s.added_red_ = std::move(window_red);
      s.added_total_ = std::move(window_total);
    }
    return s;
  }
  const std::vector<Scalar>& window_red_buffer() const { return added_red_; }
  const std::vector<Scalar>& window_total_buffer() const { return added_total_; }

  friend bool operator==(const NetworkState&, const NetworkState&) = default;

 private:
  std::size_t time_ = 0;
  std::vector<Scalar> red_;
  std::vector<Scalar> total_;
  MemoryMode mode_;
  std::vector<Scalar> added_red_;    // [slot * N + i]
  std::vector<Scalar> added_total_;
};

// S_i: red mass over total mass of the closed neighborhood of i.
template <typename Scalar>
Scalar super_urn_proportion(const NetworkState<Scalar>& state, const Network& net, NodeId i) {
  Scalar red(0), total(0);
  for (NodeId j : net.closed_neighborhood(i)) {
    red += state.red_mass(j);
    total += state.total_mass(j);
  }
  return red / total;
}

// Curing bound Delta_r (1 - U) S / (U (1 - S)): the black reinforcement at
// which the expected increment numerator E[Delta_r Z (1 - U) - Delta_b U (1 - Z)]
// vanishes. See exact_curing_mass for the drift of U itself.
template <typename Scalar>
Scalar curing_delta_bound(const NetworkState<Scalar>& state, const Network& net, NodeId i,
                          const Scalar& delta_red) {
  const Scalar u = state.individual_proportion(i);
  const Scalar s = super_urn_proportion(state, net, i);
  return delta_red * (1 - u) * s / (u * (1 - s));
}

/// The bound above zeroes E[Δ_r Z (1 - U) - Δ_b U (1 - Z)], the increment
/// numerator, but U_{i,n} divides by the new total X + Δ_r or X + Δ_b, which
/// depends on the draw. At the bound B the exact drift is
///
///   K (1 / (X + Δ_r) - 1 / (X + B)),  K = Δ_r (1 - U) S,
///
/// so it vanishes only when B = Δ_r. This returns the black mass that makes
/// E[U_{i,n} | history] = U_{i,n-1} exactly,
///
///   b = K X / ((1 - S) U (X + Δ_r) - K),
///
/// or nullopt when the denominator is not positive (every finite b leaves a
/// positive drift).
template <typename Scalar>
std::optional<Scalar> exact_curing_mass(const NetworkState<Scalar>& state, const Network& net,
                                        NodeId i, const Scalar& delta_red) {
  const Scalar u = state.individual_proportion(i);
  const Scalar s = super_urn_proportion(state, net, i);
  const Scalar x = state.total_mass(i);
  const Scalar k = delta_red * (1 - u) * s;
  const Scalar den = (1 - s) * u * (x + delta_red) - k;
  if (!(den > 0)) return std::nullopt;
  return Scalar(k * x / den);
}

/// Reinforcement masses Delta_r,i(t) and Delta_b,i(t).
///
/// Four kinds: one constant pair for every node and time, a pair per node, a
/// table indexed by time then node, or a curing policy whose black mass is a
/// multiple of curing_delta_bound() evaluated on the current state.
template <typename Scalar>
class DeltaSchedule {
 public:
  struct Constant {
    Scalar red, black;
  };
  struct PerNode {
    std::vector<Scalar> red, black;
  };
  struct Tabulated {
    std::vector<std::vector<Scalar>> red, black;  // [t - 1][i]
  };
  struct Curing {
    Scalar red, multiplier;
  };
  using Kind = std::variant<Constant, PerNode, Tabulated, Curing>;

  DeltaSchedule() : kind_(Constant{Scalar(0), Scalar(0)}) {}
  explicit DeltaSchedule(Kind kind) : kind_(std::move(kind)) { check_nonnegative(); }

  static DeltaSchedule constant(Scalar both) { return DeltaSchedule(Constant{both, both}); }
  static DeltaSchedule constant(Scalar red, Scalar black) {
    return DeltaSchedule(Constant{std::move(red), std::move(black)});
  }
  static DeltaSchedule per_node(std::vector<Scalar> red, std::vector<Scalar> black) {
    return DeltaSchedule(PerNode{std::move(red), std::move(black)});
  }
  static DeltaSchedule tabulated(std::vector<std::vector<Scalar>> red,
                                 std::vector<std::vector<Scalar>> black) {
    return DeltaSchedule(Tabulated{std::move(red), std::move(black)});
  }
  static DeltaSchedule curing(Scalar red, Scalar multiplier) {
    return DeltaSchedule(Curing{std::move(red), std::move(multiplier)});
  }

  const Kind& kind() const { return kind_; }
  bool is_state_dependent() const { return std::holds_alternative<Curing>(kind_); }

  // The common value when Delta_r = Delta_b is the same for all nodes and times.
  std::optional<Scalar> uniform_value() const {
    if (const auto* c = std::get_if<Constant>(&kind_); c && c->red == c->black) return c->red;
    return std::nullopt;
  }

  // Checks sizes against the network and, for tables, the horizon.
  void validate(std::size_t node_count, std::size_t horizon) const {
    if (const auto* p = std::get_if<PerNode>(&kind_)) {
      if (p->red.size() != node_count || p->black.size() != node_count) {
        throw Error(ErrorCode::kSizeMismatch, "per-node schedule length differs from node count");
      }
    } else if (const auto* t = std::get_if<Tabulated>(&kind_)) {
      if (t->red.size() < horizon || t->black.size() < horizon) {
        throw Error(ErrorCode::kSizeMismatch, "tabulated schedule has fewer rows than the horizon");
      }
      for (std::size_t k = 0; k < t->red.size(); ++k) {
        if (t->red[k].size() != node_count || t->black[k].size() != node_count) {
          throw Error(ErrorCode::kSizeMismatch,
                      "tabulated schedule row " + std::to_string(k + 1) + " has the wrong length");
        }
      }
    }
  }

  // True when no step ever adds mass (plain sampling with replacement).
  bool is_identically_zero() const {
    return std::visit(
        [](const auto& k) -> bool {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Constant>) {
            return k.red == 0 && k.black == 0;
          } else if constexpr (std::is_same_v<K, Curing>) {
            return k.red == 0;
          } else {
            auto all_zero = [](const auto& v) {
              for (const auto& x : v) {
                if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Scalar>) {
                  if (x != 0) return false;
                } else {
                  for (const auto& y : x)
                    if (y != 0) return false;
                }
              }
              return true;
            };
            return all_zero(k.red) && all_zero(k.black);
          }
        },
        kind_);
  }

  // Masses for step t = state.time() + 1.
  void resolve_into(const NetworkState<Scalar>& state, const Network& net,
                    StepDeltas<Scalar>& out) const {
    if (const auto* c = std::get_if<Curing>(&kind_)) {
      const std::size_t n = state.node_count();
      out.red.assign(n, c->red);
      out.black.resize(n);
      for (NodeId i = 0; i < n; ++i) {
        out.black[i] = c->multiplier * curing_delta_bound(state, net, i, c->red);
      }
      return;
    }
    at_step_into(state.time() + 1, state.node_count(), out);
  }

  // Masses for step t of a state-independent schedule. Throws
  // Error{kHypothesisViolation} for curing policies.
  void at_step_into(std::size_t t, std::size_t n, StepDeltas<Scalar>& out) const {
    out.red.resize(n);
    out.black.resize(n);
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Curing>) {
            throw Error(ErrorCode::kHypothesisViolation,
                        "curing schedule depends on the state");
          } else if constexpr (std::is_same_v<K, Tabulated>) {
            if (t == 0 || t > k.red.size()) {
              throw Error(ErrorCode::kIndexOutOfRange,
                          "tabulated schedule has no row for step " + std::to_string(t));
            }
          }
          for (std::size_t i = 0; i < n; ++i) {
            if constexpr (std::is_same_v<K, Constant>) {
              out.red[i] = k.red;
              out.black[i] = k.black;
            } else if constexpr (std::is_same_v<K, PerNode>) {
              out.red[i] = k.red[i];
              out.black[i] = k.black[i];
            } else if constexpr (std::is_same_v<K, Tabulated>) {
              out.red[i] = k.red[t - 1][i];
              out.black[i] = k.black[t - 1][i];
            }
          }
        },
        kind_);
  }

  StepDeltas<Scalar> resolve(const NetworkState<Scalar>& state, const Network& net) const {
    StepDeltas<Scalar> d;
    resolve_into(state, net, d);
    return d;
  }

 private:
  void check_nonnegative() const {
    auto bad = [] {
      throw Error(ErrorCode::kInvalidParameter, "reinforcement masses must be >= 0");
    };
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Constant>) {
            if (k.red < 0 || k.black < 0) bad();
          } else if constexpr (std::is_same_v<K, PerNode>) {
            for (const auto& x : k.red) if (x < 0) bad();
            for (const auto& x : k.black) if (x < 0) bad();
          } else if constexpr (std::is_same_v<K, Tabulated>) {
            for (const auto& row : k.red) for (const auto& x : row) if (x < 0) bad();
            for (const auto& row : k.black) for (const auto& x : row) if (x < 0) bad();
          } else {
            if (k.red < 0 || k.multiplier < 0) bad();
          }
        },
        kind_);
  }

  Kind kind_;
};

template <typename To, typename From>
DeltaSchedule<To> convert_schedule(const DeltaSchedule<From>& s) {
  auto vec = [](const std::vector<From>& v) {
    std::vector<To> out;
    for (const auto& x : v) out.push_back(scalar_cast<To>(x));
    return out;
  };
  auto table = [&](const std::vector<std::vector<From>>& t) {
    std::vector<std::vector<To>> out;
    for (const auto& row : t) out.push_back(vec(row));
    return out;
  };
  using Src = DeltaSchedule<From>;
  using Dst = DeltaSchedule<To>;
  return std::visit(
      [&](const auto& k) -> Dst {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, typename Src::Constant>) {
          return Dst::constant(scalar_cast<To>(k.red), scalar_cast<To>(k.black));
        } else if constexpr (std::is_same_v<K, typename Src::PerNode>) {
          return Dst::per_node(vec(k.red), vec(k.black));
        } else if constexpr (std::is_same_v<K, typename Src::Tabulated>) {
          return Dst::tabulated(table(k.red), table(k.black));
        } else {
          return Dst::curing(scalar_cast<To>(k.red), scalar_cast<To>(k.multiplier));
        }
      },
      s.kind());
}

template <typename Scalar>
NetworkState<Scalar> initial_state(const Network& net, const UrnInit<Scalar>& init,
                                   MemoryMode mode = MemoryMode::infinite()) {
  if (init.node_count() != net.node_count() || init.black.size() != net.node_count()) {
    throw Error(ErrorCode::kSizeMismatch,
                "urn init has " + std::to_string(init.node_count()) + " nodes, network has " +
                    std::to_string(net.node_count()));
  }
  init.validate();
  std::vector<Scalar> total;
  total.reserve(init.node_count());
  for (std::size_t i = 0; i < init.node_count(); ++i) total.push_back(init.total(i));
  return NetworkState<Scalar>(init.red, std::move(total), mode);
}

// Component i is P(Z_{i,n} = 1 | history) = S_{i,n-1}.
template <typename Scalar>
std::vector<Scalar> conditional_draw_probabilities(const NetworkState<Scalar>& state,
                                                   const Network& net) {
  std::vector<Scalar> p;
  p.reserve(net.node_count());
  for (NodeId i = 0; i < net.node_count(); ++i) p.push_back(super_urn_proportion(state, net, i));
  return p;
}

namespace detail {
inline void check_draws(std::span<const std::uint8_t> draws, std::size_t n) {
  if (draws.size() != n) {
    throw Error(ErrorCode::kSizeMismatch, "draw vector has " + std::to_string(draws.size()) +
                                              " entries, network has " + std::to_string(n));
  }
  for (auto d : draws) {
    if (d > 1) throw Error(ErrorCode::kInvalidParameter, "draws must be 0 or 1");
  }
}
}  // namespace detail

template <typename Scalar>
NetworkState<Scalar> apply_draws(NetworkState<Scalar> state, const Network& net,
                                 std::span<const std::uint8_t> draws,
                                 const DeltaSchedule<Scalar>& sched) {
  detail::check_draws(draws, net.node_count());
  const auto d = sched.resolve(state, net);
  state.advance(draws, d);
  return state;
}

template <typename Scalar>
NetworkState<Scalar> replay(const Network& net, const UrnInit<Scalar>& init,
                            const DeltaSchedule<Scalar>& sched, const DrawRecord& record,
                            MemoryMode mode = MemoryMode::infinite()) {
  auto state = initial_state(net, init, mode);
  StepDeltas<Scalar> d;
  for (const auto& draws : record) {
    detail::check_draws(draws, net.node_count());
    sched.resolve_into(state, net, d);
    state.advance(draws, d);
  }
  return state;
}

// Samples every node independently given the history: Z_i ~ Bernoulli(S_i),
// realised as uniform() < S_i with nodes visited in index order. Advances
// `state` in place and writes the draws to `draws`.
template <typename Scalar>
void sample_step_inplace(NetworkState<Scalar>& state, const Network& net,
                         const DeltaSchedule<Scalar>& sched, Rng& rng, DrawVector& draws,
                         StepDeltas<Scalar>& scratch) {
  const std::size_t n = net.node_count();
  draws.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    draws[i] = rng.uniform() < to_double(super_urn_proportion(state, net, i)) ? 1 : 0;
  }
  sched.resolve_into(state, net, scratch);
  state.advance(draws, scratch);
}

template <typename Scalar>
std::pair<DrawVector, NetworkState<Scalar>> sample_step(NetworkState<Scalar> state,
                                                        const Network& net,
                                                        const DeltaSchedule<Scalar>& sched,
                                                        Rng& rng) {
  DrawVector draws;
  StepDeltas<Scalar> scratch;
  sample_step_inplace(state, net, sched, rng, draws, scratch);
  return {std::move(draws), std::move(state)};
}

// Conditional red-draw probability of node i under finite memory. For n <= M
// nothing has expired yet and this equals the infinite-memory value.
template <typename Scalar>
Scalar finite_memory_conditional(const NetworkState<Scalar>& state, const Network& net, NodeId i) {
  if (!state.memory().is_finite()) {
    throw Error(ErrorCode::kHypothesisViolation, "state is not in finite-memory mode");
  }
  return super_urn_proportion(state, net, i);
}

/// Direct window formula for the next draw of node i after record.size()
/// steps with memory M:
///
///   (R̄_i + Σ_{j∈N'_i} Σ_{t in window} Z_{j,t} Δ_r,j(t))
///   / (T̄_i + Σ_{j∈N'_i} Σ_{t in window} [Z Δ_r + (1 - Z) Δ_b])
///
/// over the last min(M, n) steps. Requires a schedule that does not depend on
/// the state.
template <typename Scalar>
Scalar window_conditional(const Network& net, const UrnInit<Scalar>& init,
                          const DeltaSchedule<Scalar>& sched, const DrawRecord& record,
                          std::size_t memory, NodeId i) {
  if (sched.is_state_dependent()) {
    throw Error(ErrorCode::kHypothesisViolation,
                "window formula needs a state-independent schedule");
  }
  const std::size_t n = record.size();
  const std::size_t first = n > memory ? n - memory + 1 : 1;
  Scalar red(0), total(0);
  for (NodeId j : net.closed_neighborhood(i)) {
    red += init.red[j];
    total += init.total(j);
  }
  StepDeltas<Scalar> d;
  for (std::size_t t = first; t <= n; ++t) {
    sched.at_step_into(t, net.node_count(), d);
    for (NodeId j : net.closed_neighborhood(i)) {
      if (record[t - 1][j]) {
        red += d.red[j];
        total += d.red[j];
      } else {
        total += d.black[j];
      }
    }
  }
  return red / total;
}

/// E[U_{i,n} | history] - U_{i,n-1} for constant Delta_r = Delta_b = delta and
/// equal initial totals:
///
///   delta * Σ_{j∈N_i}(U_j - U_i) / ((T + n delta)(|N_i| + 1)).
///
/// Under those hypotheses every urn holds the same total mass X = T + (n-1)
/// delta, so T + n delta = X + delta. Throws Error{kHypothesisViolation} when
/// totals differ or the state uses finite memory.
template <typename Scalar>
Scalar expected_urn_increment(const NetworkState<Scalar>& state, const Network& net, NodeId i,
                              const Scalar& delta) {
  if (state.memory().is_finite()) {
    throw Error(ErrorCode::kHypothesisViolation, "increment formula assumes infinite memory");
  }
  for (NodeId j = 1; j < state.node_count(); ++j) {
    if (state.total_mass(j) != state.total_mass(0)) {
      throw Error(ErrorCode::kHypothesisViolation,
                  "urn totals differ; needs equal T_i and a constant schedule");
    }
  }
  const Scalar ui = state.individual_proportion(i);
  Scalar spread(0);
  for (NodeId j : net.neighbors(i)) spread += state.individual_proportion(j) - ui;
  const Scalar degree_plus_one(static_cast<long>(net.degree(i) + 1));
  return delta * spread / ((state.total_mass(i) + delta) * degree_plus_one);
}

// Mean of the individual proportions.
template <typename Scalar>
Scalar network_susceptibility(const NetworkState<Scalar>& state) {
  Scalar sum(0);
  for (NodeId i = 0; i < state.node_count(); ++i) sum += state.individual_proportion(i);
  return sum / Scalar(static_cast<long>(state.node_count()));
}

}  // namespace polya

#endif  // POLYA_CONTAGION_HPP_
