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

#ifndef POLYA_RNG_HPP_
#define POLYA_RNG_HPP_

#include <cstdint>
#include <limits>

namespace polya {

// SplitMix64 (Steele, Lea, Flood 2014). Used for seeding and stream
// derivation; one call per output.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** 1.0 (Blackman and Vigna 2018), seeded by four SplitMix64
/// outputs. The algorithm is fully specified so that streams are reproducible
/// from other implementations given the same 64-bit seed:
///
///   stream_seed(master, k) = splitmix64 applied to (master ^ splitmix64(k))
///
/// where splitmix64(x) is the first output of a SplitMix64 started at x.
/// uniform() maps the top 53 bits to [0, 1).
///
/// Satisfies UniformRandomBitGenerator so it can drive <random>
/// distributions as well.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  // Independent stream for trial `index` under `master_seed`.
  static Rng stream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t s_[4];
};

}  // namespace polya

#endif  // POLYA_RNG_HPP_
