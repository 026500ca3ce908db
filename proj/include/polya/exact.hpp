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

#ifndef POLYA_EXACT_HPP_
#define POLYA_EXACT_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polya/contagion.hpp"
#include "polya/errors.hpp"
#include "polya/graph.hpp"
#include "polya/scalar.hpp"

// Exact finite-horizon distributions of the network process, the
// complete-network closed forms, the classical Polya law, and the KL rate.

namespace polya {

// Max number of binary coordinates (nodes x steps) enumerated exhaustively.
inline constexpr std::size_t kDefaultEnumerationCap = 24;

namespace detail {

inline void check_cap(std::size_t bits, std::size_t cap) {
  if (bits > cap || bits > 62) {
    throw Error(ErrorCode::kCapExceeded, "enumeration needs 2^" + std::to_string(bits) +
                                             " assignments; cap is 2^" + std::to_string(cap));
  }
}

// Probability of each of the 2^N draw vectors given per-node red
// probabilities; mask bit i is node i.
template <typename Scalar>
std::vector<Scalar> draw_vector_probabilities(const std::vector<Scalar>& p) {
  std::vector<Scalar> out{Scalar(1)};
  out.reserve(std::size_t{1} << p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t half = out.size();
    const Scalar q = 1 - p[i];
    out.resize(2 * half);
    for (std::size_t m = 0; m < half; ++m) {
      out[m + half] = out[m] * p[i];
      out[m] *= q;
    }
  }
  return out;
}

inline void mask_to_draws(std::uint64_t mask, DrawVector& draws) {
  for (std::size_t i = 0; i < draws.size(); ++i) draws[i] = (mask >> i) & 1u;
}

}  // namespace detail

/// Visits every length-`horizon` draw history with its probability
/// (the product of super-urn conditionals along the path) and the resulting
/// state. Shared prefixes are computed once.
///
/// visitor(const DrawRecord&, const NetworkState<Scalar>&, const Scalar& prob)
template <typename Scalar, typename Visitor>
void visit_histories(const Network& net, const UrnInit<Scalar>& init,
                     const DeltaSchedule<Scalar>& sched, std::size_t horizon, Visitor&& visitor,
                     MemoryMode mode = MemoryMode::infinite(),
                     std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t n = net.node_count();
  detail::check_cap(n * horizon, cap);
  sched.validate(n, horizon);

  DrawRecord record;
  std::function<void(const NetworkState<Scalar>&, const Scalar&)> descend =
      [&](const NetworkState<Scalar>& state, const Scalar& prob) {
        if (record.size() == horizon) {
          visitor(static_cast<const DrawRecord&>(record), state, prob);
          return;
        }
        const auto masks = detail::draw_vector_probabilities(conditional_draw_probabilities(state, net));
        const auto deltas = sched.resolve(state, net);
        record.emplace_back(n);
        for (std::uint64_t m = 0; m < masks.size(); ++m) {
          detail::mask_to_draws(m, record.back());
          NetworkState<Scalar> next = state;
          next.advance(record.back(), deltas);
          descend(next, prob * masks[m]);
        }
        record.pop_back();
      };
  descend(initial_state(net, init, mode), Scalar(1));
}

/// Probability table over all assignments of a (node, step) grid.
///
/// Index bit (t - 1) * N + i holds a_{i,t}.
template <typename Scalar>
class JointTable {
 public:
  JointTable(std::size_t node_count, std::size_t horizon, std::vector<Scalar> probs)
      : n_(node_count), horizon_(horizon), probs_(std::move(probs)) {
    if (probs_.size() != (std::uint64_t{1} << (n_ * horizon_))) {
      throw Error(ErrorCode::kSizeMismatch, "joint table size is not 2^(N*n)");
    }
  }

  std::size_t node_count() const { return n_; }
  std::size_t horizon() const { return horizon_; }
  std::uint64_t size() const { return probs_.size(); }
  const Scalar& operator[](std::uint64_t index) const { return probs_[index]; }
  const std::vector<Scalar>& probabilities() const { return probs_; }

  std::size_t bit(NodeId i, std::size_t t) const { return (t - 1) * n_ + i; }
  bool draw(std::uint64_t index, NodeId i, std::size_t t) const {
    return (index >> bit(i, t)) & 1u;
  }

  std::uint64_t index_of(const DrawRecord& record) const {
    std::uint64_t index = 0;
    for (std::size_t t = 1; t <= record.size(); ++t)
      for (NodeId i = 0; i < n_; ++i)
        if (record[t - 1][i]) index |= std::uint64_t{1} << bit(i, t);
    return index;
  }

  Scalar total() const {
    Scalar s(0);
    for (const auto& p : probs_) s += p;
    return s;
  }

  // P(Z_{i,t} = 1 for every (i, t) in `cells`), t 1-based.
  Scalar probability_all_red(std::span<const std::pair<NodeId, std::size_t>> cells) const {
    std::uint64_t need = 0;
    for (auto [i, t] : cells) need |= std::uint64_t{1} << bit(i, t);
    Scalar s(0);
    for (std::uint64_t a = 0; a < probs_.size(); ++a)
      if ((a & need) == need) s += probs_[a];
    return s;
  }

 private:
  std::size_t n_;
  std::size_t horizon_;
  std::vector<Scalar> probs_;
};

template <typename Scalar>
JointTable<Scalar> enumerate_joint(const Network& net, const UrnInit<Scalar>& init,
                                   const DeltaSchedule<Scalar>& sched, std::size_t horizon,
                                   MemoryMode mode = MemoryMode::infinite(),
                                   std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t n = net.node_count();
  detail::check_cap(n * horizon, cap);
  std::vector<Scalar> probs(std::uint64_t{1} << (n * horizon), Scalar(0));
  visit_histories(
      net, init, sched, horizon,
      [&](const DrawRecord& record, const NetworkState<Scalar>&, const Scalar& p) {
        std::uint64_t index = 0;
        for (std::size_t t = 0; t < record.size(); ++t)
          for (NodeId i = 0; i < n; ++i)
            if (record[t][i]) index |= std::uint64_t{1} << (t * n + i);
        probs[index] = p;
      },
      mode, cap);
  return JointTable<Scalar>(n, horizon, std::move(probs));
}

// Chain rule along one assignment: Π_t Π_i S_{i,t-1}^{a} (1 - S_{i,t-1})^{1-a}.
template <typename Scalar>
Scalar joint_probability(const Network& net, const UrnInit<Scalar>& init,
                         const DeltaSchedule<Scalar>& sched, const DrawRecord& record,
                         MemoryMode mode = MemoryMode::infinite()) {
  auto state = initial_state(net, init, mode);
  Scalar prob(1);
  StepDeltas<Scalar> d;
  for (const auto& draws : record) {
    detail::check_draws(draws, net.node_count());
    for (NodeId i = 0; i < net.node_count(); ++i) {
      const Scalar s = super_urn_proportion(state, net, i);
      prob *= draws[i] ? s : Scalar(1 - s);
    }
    sched.resolve_into(state, net, d);
    state.advance(draws, d);
  }
  return prob;
}

/// Distribution of node i's draws over steps first..last (1-based,
/// inclusive), summing out everything else. Result index bit k is the draw at
/// step first + k.
template <typename Scalar>
std::vector<Scalar> node_marginal(const JointTable<Scalar>& table, NodeId i, std::size_t first,
                                  std::size_t last) {
  if (first < 1 || last < first || last > table.horizon() || i >= table.node_count()) {
    throw Error(ErrorCode::kIndexOutOfRange, "marginal window outside the table");
  }
  const std::size_t len = last - first + 1;
  std::vector<Scalar> out(std::size_t{1} << len, Scalar(0));
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    std::size_t key = 0;
    for (std::size_t k = 0; k < len; ++k) key |= std::size_t{table.draw(a, i, first + k)} << k;
    out[key] += table[a];
  }
  return out;
}

// Ĩ_n = (1/N) Σ_i P(Z_{i,n} = 1), from histories of length n - 1.
template <typename Scalar>
Scalar average_infection_rate(const Network& net, const UrnInit<Scalar>& init,
                              const DeltaSchedule<Scalar>& sched, std::size_t n,
                              MemoryMode mode = MemoryMode::infinite(),
                              std::size_t cap = kDefaultEnumerationCap) {
  if (n == 0) throw Error(ErrorCode::kInvalidParameter, "infection rate needs n >= 1");
  Scalar sum(0);
  visit_histories(
      net, init, sched, n - 1,
      [&](const DrawRecord&, const NetworkState<Scalar>& state, const Scalar& p) {
        Scalar s(0);
        for (NodeId i = 0; i < net.node_count(); ++i) s += super_urn_proportion(state, net, i);
        sum += p * s;
      },
      mode, cap);
  return sum / Scalar(static_cast<long>(net.node_count()));
}

/// E[f(next state) | state]: averages f over the 2^N possible next draw
/// vectors weighted by their conditional probabilities.
template <typename Scalar, typename F>
Scalar next_step_expectation(const NetworkState<Scalar>& state, const Network& net,
                             const DeltaSchedule<Scalar>& sched, F&& f) {
  const std::size_t n = net.node_count();
  detail::check_cap(n, kDefaultEnumerationCap);
  const auto masks = detail::draw_vector_probabilities(conditional_draw_probabilities(state, net));
  const auto deltas = sched.resolve(state, net);
  DrawVector draws(n);
  Scalar e(0);
  for (std::uint64_t m = 0; m < masks.size(); ++m) {
    detail::mask_to_draws(m, draws);
    NetworkState<Scalar> next = state;
    next.advance(draws, deltas);
    e += masks[m] * f(static_cast<const NetworkState<Scalar>&>(next));
  }
  return e;
}

/// Largest |E[Ũ_n | history] - Ũ_{n-1}| over all histories of length n - 1,
/// for each n in 1..horizon. Zero everywhere exactly when the susceptibility
/// is a martingale up to the horizon.
template <typename Scalar>
std::vector<Scalar> exact_susceptibility_drift(const Network& net, const UrnInit<Scalar>& init,
                                               const DeltaSchedule<Scalar>& sched,
                                               std::size_t horizon,
                                               std::size_t cap = kDefaultEnumerationCap) {
  std::vector<Scalar> out;
  for (std::size_t n = 1; n <= horizon; ++n) {
    Scalar worst(0);
    visit_histories(
        net, init, sched, n - 1,
        [&](const DrawRecord&, const NetworkState<Scalar>& state, const Scalar&) {
          const Scalar now = network_susceptibility(state);
          Scalar gap = next_step_expectation(state, net, sched, [](const NetworkState<Scalar>& s) {
                         return network_susceptibility(s);
                       }) - now;
          if (gap < 0) gap = -gap;
          if (gap > worst) worst = gap;
        },
        MemoryMode::infinite(), cap);
    out.push_back(worst);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complete networks.

template <typename Scalar>
struct CompleteParams {
  Scalar rho;    // R̄ / T̄
  Scalar delta;  // N Δ / T̄
};

template <typename Scalar>
CompleteParams<Scalar> complete_params(const UrnInit<Scalar>& init, const Scalar& delta_mass) {
  Scalar red(0), total(0);
  for (std::size_t i = 0; i < init.node_count(); ++i) {
    red += init.red[i];
    total += init.total(i);
  }
  const Scalar n(static_cast<long>(init.node_count()));
  return {red / total, n * delta_mass / total};
}

namespace detail {
template <typename Scalar>
void check_rho(const Scalar& rho) {
  if (!(rho > 0 && rho < 1)) throw Error(ErrorCode::kDomainError, "rho must lie in (0, 1)");
}
template <typename Scalar>
void check_delta(const Scalar& delta) {
  if (delta < 0) throw Error(ErrorCode::kDomainError, "delta must be >= 0");
}
}  // namespace detail

// P(Z_{i,n} = 1) in a complete network: ρ for every node and step.
template <typename Scalar>
Scalar complete_marginal(const Scalar& rho) {
  detail::check_rho(rho);
  return rho;
}

// P(Z_{i,n} = 1, Z_{k,1} = 1) in an N-node complete network, any n >= 2 and
// any nodes i, k: ρ (ρ + (1 + (N-1)ρ) δ/N) / (1 + δ).
template <typename Scalar>
Scalar complete_n1_joint(const Scalar& rho, const Scalar& delta, std::size_t node_count) {
  detail::check_rho(rho);
  detail::check_delta(delta);
  if (node_count == 0) throw Error(ErrorCode::kInvalidParameter, "N must be >= 1");
  const Scalar n(static_cast<long>(node_count));
  return rho * (rho + (1 + (n - 1) * rho) * delta / n) / (1 + delta);
}

// (P(Z_{1,2}=1, Z_{1,1}=1), P(Z_{1,3}=1, Z_{1,2}=1)) for the 2-node complete
// network. The two differ whenever δ > 0.
template <typename Scalar>
std::pair<Scalar, Scalar> nonstationarity_witness(const Scalar& rho, const Scalar& delta) {
  detail::check_rho(rho);
  detail::check_delta(delta);
  const Scalar first = rho * (rho + (1 + rho) * delta / 2) / (1 + delta);
  const Scalar d2 = delta * delta;
  const Scalar d3 = d2 * delta;
  const Scalar num = 4 * rho + delta * (2 + 14 * rho) + d2 * (6 + 14 * rho) + d3 * (5 + 3 * rho);
  const Scalar den = 4 * (1 + delta) * (1 + delta) * (1 + 2 * delta);
  return {first, rho * num / den};
}

/// Law of one node's first n draws in an N-node complete network with
/// constant reinforcement (Δ_r, Δ_b) for every node.
///
/// Every node draws from the same pooled urn, whose composition after t steps
/// depends only on the total number K of red draws so far. Tracking the
/// node's own history h together with the red count among the other N-1
/// nodes, whose draws at each step are Binomial(N-1, S), gives the exact law
/// in O(2^n * n N^2) work instead of 2^(N n). Result index bit k is the draw
/// at step k + 1.
template <typename Scalar>
std::vector<Scalar> complete_node_process(std::size_t node_count, const Scalar& red_total,
                                          const Scalar& mass_total, const Scalar& delta_red,
                                          const Scalar& delta_black, std::size_t n) {
  if (node_count == 0 || n == 0 || n > 24) {
    throw Error(ErrorCode::kInvalidParameter, "complete_node_process needs N >= 1, 1 <= n <= 24");
  }
  const std::size_t others = node_count - 1;
  // layer[h * width + k]: own history h (t bits), k red draws among others.
  std::vector<Scalar> layer{Scalar(1)};
  std::size_t width = 1;
  std::vector<Scalar> binom(others + 1);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t next_width = width + others;
    std::vector<Scalar> next((std::size_t{2} << t) * next_width, Scalar(0));
    const Scalar draws_so_far(static_cast<long>(t * node_count));
    for (std::size_t h = 0; h < (std::size_t{1} << t); ++h) {
      const long own = std::popcount(h);
      for (std::size_t k = 0; k < width; ++k) {
        const Scalar& p = layer[h * width + k];
        if (p == 0) continue;
        const Scalar reds(own + static_cast<long>(k));
        const Scalar s = (red_total + delta_red * reds) /
                         (mass_total + delta_red * reds + delta_black * (draws_so_far - reds));
        // Binomial(others, s) pmf by the ratio recursion.
        const Scalar q = 1 - s;
        Scalar term(1);
        for (std::size_t r = 0; r < others; ++r) term *= q;
        binom[0] = term;
        for (std::size_t r = 0; r < others; ++r) {
          term = term * Scalar(static_cast<long>(others - r)) / Scalar(static_cast<long>(r + 1)) * s / q;
          binom[r + 1] = term;
        }
        for (int a = 0; a < 2; ++a) {
          const Scalar own_p = a ? s : q;
          const std::size_t h2 = h | (std::size_t(a) << t);
          for (std::size_t r = 0; r <= others; ++r) {
            next[h2 * next_width + k + r] += p * own_p * binom[r];
          }
        }
      }
    }
    layer.swap(next);
    width = next_width;
  }
  std::vector<Scalar> out(std::size_t{1} << n, Scalar(0));
  for (std::size_t h = 0; h < out.size(); ++h)
    for (std::size_t k = 0; k < width; ++k) out[h] += layer[h * width + k];
  return out;
}

/// Law of node i's first n draws. Uses the lumped complete-network recursion
/// when the network is complete and the schedule is one constant pair;
/// otherwise enumerates the joint table (subject to the cap).
template <typename Scalar>
std::vector<Scalar> node_process_distribution(const Network& net, const UrnInit<Scalar>& init,
                                              const DeltaSchedule<Scalar>& sched, NodeId i,
                                              std::size_t n,
                                              std::size_t cap = kDefaultEnumerationCap) {
  using Constant = typename DeltaSchedule<Scalar>::Constant;
  if (const auto* c = std::get_if<Constant>(&sched.kind());
      c && classify(net) == Topology::kComplete && n <= 24) {
    init.validate();
    Scalar red(0), total(0);
    for (std::size_t j = 0; j < init.node_count(); ++j) {
      red += init.red[j];
      total += init.total(j);
    }
    return complete_node_process(net.node_count(), red, total, c->red, c->black, n);
  }
  return node_marginal(enumerate_joint(net, init, sched, n, MemoryMode::infinite(), cap), i, 1, n);
}

// ---------------------------------------------------------------------------
// Classical Polya process.

template <typename Scalar>
struct PolyaParams {
  Scalar rho;
  Scalar delta;

  void validate() const {
    detail::check_rho(rho);
    detail::check_delta(delta);
  }
};

// Q^{(n)}(a): bit k of `bits` is a_{k+1}. Sequential product
// Π_t (ρ + δ·reds_before)/(1 + (t-1)δ) for red, (1-ρ + δ·blacks_before)/(...)
// for black.
template <typename Scalar>
Scalar classical_polya_joint(const PolyaParams<Scalar>& params, std::uint64_t bits, std::size_t n) {
  params.validate();
  Scalar p(1);
  long reds = 0, blacks = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const Scalar den = 1 + Scalar(static_cast<long>(t)) * params.delta;
    if ((bits >> t) & 1u) {
      p *= (params.rho + params.delta * Scalar(reds)) / den;
      ++reds;
    } else {
      p *= (1 - params.rho + params.delta * Scalar(blacks)) / den;
      ++blacks;
    }
  }
  return p;
}

template <typename Scalar>
std::vector<Scalar> classical_polya_table(const PolyaParams<Scalar>& params, std::size_t n) {
  if (n > 30) throw Error(ErrorCode::kCapExceeded, "classical table limited to n <= 30");
  std::vector<Scalar> out(std::size_t{1} << n);
  for (std::uint64_t a = 0; a < out.size(); ++a) out[a] = classical_polya_joint(params, a, n);
  return out;
}

// Gamma-ratio form
//   Γ(1/δ) Γ(ρ/δ + k) Γ((1-ρ)/δ + n - k) / (Γ(1/δ + n) Γ(ρ/δ) Γ((1-ρ)/δ))
// with k the number of reds; evaluated through lgamma. δ = 0 gives the
// Bernoulli product.
double classical_polya_joint_gamma(double rho, double delta, std::uint64_t bits, std::size_t n);

// (1/n) Σ_a P(a) ln(P(a)/Q(a)). Throws Error{kSupportMismatch} when Q
// vanishes where P does not, Error{kSizeMismatch} on length mismatch.
double kl_rate(std::span<const double> p, std::span<const double> q, std::size_t n);

template <typename Scalar>
std::vector<double> to_double_vector(const std::vector<Scalar>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

// CSV export: header a_{1,1}..a_{1,n},a_{2,1}..a_{N,n} then p_num,p_den
// (rational) or p (double); one row per assignment in index order.
void write_joint_table_csv(std::ostream& out, const JointTable<Rational>& table);
void write_joint_table_csv(std::ostream& out, const JointTable<double>& table);

}  // namespace polya

#endif  // POLYA_EXACT_HPP_
