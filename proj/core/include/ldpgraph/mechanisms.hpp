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

#ifndef LDPGRAPH_MECHANISMS_HPP_
#define LDPGRAPH_MECHANISMS_HPP_

#include <cstdint>
#include <vector>

#include "ldpgraph/graph.hpp"
#include "ldpgraph/random.hpp"

namespace ldpgraph {

// Privacy budget split across the protocol rounds: eps0 buys the noisy
// max-degree release, eps1 the first estimation round, eps2 the second.
// A degree release reveals information about both endpoints of an edge, so
// it costs double when each user's full edge set must be protected.
struct PrivacyBudget {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;

  double edge_ldp_total() const { return eps0 + eps1 + eps2; }
  double entire_edge_ldp_total() const { return 2.0 * eps0 + eps1 + eps2; }

  PrivacyBudget operator+(const PrivacyBudget& o) const {
    return {eps0 + o.eps0, eps1 + o.eps1, eps2 + o.eps2};
  }
};

// Probability that a randomized-response bit is flipped: 1 / (e^eps + 1).
// The keep/flip likelihood ratio (1-p)/p is then exactly e^eps.
double rr_flip_prob(double eps);

// Laplace draw with the given scale via inverse-CDF sampling. A zero scale
// returns exactly zero without consuming entropy.
double laplace(RandomStream& stream, double scale);

// Flips `bit` with probability flip_prob, consuming one draw either way.
int rr_bit_with_prob(RandomStream& stream, double flip_prob, int bit);

// Randomized response on a single bit at privacy parameter eps.
int rr_bit(RandomStream& stream, double eps, int bit);

// Noise injection seam. Protocols draw noise and derive their
// randomized-response flip probability through this interface, so tests can
// replace both with noiseless channels and compare against exact counts.
class NoiseModel {
 public:
  virtual ~NoiseModel() = default;
  virtual double laplace(RandomStream& stream, double scale) const;
  virtual double flip_prob(double eps) const;
};

// Noiseless channels: zero Laplace noise and a flip probability of zero
// (every bit passes through unchanged).
class ZeroNoise final : public NoiseModel {
 public:
  double laplace(RandomStream& stream, double scale) const override;
  double flip_prob(double eps) const override;
};

const NoiseModel& real_noise();

// Randomized response over one user's lower adjacency row: bit j of the
// result (j < owner) is the possibly-flipped indicator of edge {owner, j}.
// Each pair's draw comes from its own derived stream so that eagerly and
// lazily materialized rows agree bit for bit.
std::vector<std::uint8_t> rr_lower_row(const NeighborList& a, double eps,
                                       const TrialRng& rng,
                                       const NoiseModel& noise = real_noise());

// Derived stream for the randomized-response draw of the unordered pair
// {i, j}, i > j, flattened to a lower-triangular index.
RandomStream rr_pair_stream(const TrialRng& rng, NodeId i, NodeId j);

}  // namespace ldpgraph

#endif  // LDPGRAPH_MECHANISMS_HPP_
