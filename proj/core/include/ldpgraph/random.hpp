// Copyright 2026 The ldpgraph Authors
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
//
// Counter-based keyed randomness. Every consumer of entropy derives its own
// stream from (master_seed, trial, role, index), so simulated parties never
// share draws and results do not depend on scheduling or evaluation order.

#ifndef LDPGRAPH_RANDOM_HPP_
#define LDPGRAPH_RANDOM_HPP_

#include <cstdint>

namespace ldpgraph {

// Stream derivation tag. Values are part of the reproducibility contract:
// changing them changes every seeded result.
enum class Role : std::uint64_t {
  kGraphGen = 1,       // Erdos-Renyi edge sampling
  kNodeSample = 2,     // induced-subgraph node selection
  kProjection = 3,     // per-user neighbor-list truncation order
  kEdgeFlip = 4,       // per-pair randomized-response draw
  kDegreeNoise = 5,    // per-user degree release
  kCountNoise = 6,     // per-user star-count release
  kTriangleNoise = 7,  // per-user second-round triangle release
  kCentralNoise = 8,   // single server-side release
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t chain(std::uint64_t key, std::uint64_t word) {
  return mix64((key + kGolden) ^ word);
}

}  // namespace detail

// A deterministic stream of 64-bit words keyed by its derivation tuple.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() {
    counter_ += detail::kGolden;
    return detail::mix64(key_ + counter_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1). Rejects the single zero outcome so callers can
  // take logarithms without guards.
  double uniform_positive() {
    double v;
    do {
      v = uniform();
    } while (v == 0.0);
    return v;
  }

  // Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Randomness for one trial. `lane` separates sub-protocols that would
// otherwise collide on (role, index), e.g. the two halves of a clustering
// run both adding degree noise for user i.
class TrialRng {
 public:
  TrialRng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t lane = 0)
      : master_seed_(master_seed), trial_(trial), lane_(lane) {}

  RandomStream stream(Role role, std::uint64_t index) const {
    using detail::chain;
    std::uint64_t k = chain(0x6C62272E07BB0142ULL, master_seed_);
    k = chain(k, trial_);
    k = chain(k, lane_);
    k = chain(k, static_cast<std::uint64_t>(role));
    k = chain(k, index);
    return RandomStream(k);
  }

  TrialRng with_lane(std::uint64_t lane) const {
    return TrialRng(master_seed_, trial_, lane);
  }

  std::uint64_t trial() const { return trial_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t trial_;
  std::uint64_t lane_;
};

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed) : master_seed_(master_seed) {}

  TrialRng trial(std::uint64_t t) const { return TrialRng(master_seed_, t); }
  std::uint64_t master_seed() const { return master_seed_; }

 private:
  std::uint64_t master_seed_;
};

}  // namespace ldpgraph

#endif  // LDPGRAPH_RANDOM_HPP_
