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
// Locally private estimators for triangle and k-star counts.
//
// Simulated users and the collector are separated by construction: every
// user-side release function reads exactly one NeighborList (plus already
// published messages), and collector-side aggregation consumes only the
// released values. Orchestrators fetch rows through NeighborListSource, one
// row per simulated user, which tests instrument to verify the access
// pattern.

#ifndef LDPGRAPH_ESTIMATORS_HPP_
#define LDPGRAPH_ESTIMATORS_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldpgraph/graph.hpp"
#include "ldpgraph/mechanisms.hpp"
#include "ldpgraph/noisy_graph.hpp"
#include "ldpgraph/random.hpp"

namespace ldpgraph {

// Hands out one private adjacency row per simulated user.
class NeighborListSource {
 public:
  virtual ~NeighborListSource() = default;
  virtual std::size_t node_count() const = 0;
  virtual NeighborList neighbor_list(NodeId user) const = 0;
};

class GraphSource final : public NeighborListSource {
 public:
  explicit GraphSource(const Graph& g) : g_(&g) {}
  std::size_t node_count() const override { return g_->node_count(); }
  NeighborList neighbor_list(NodeId user) const override {
    return g_->neighbor_list(user);
  }

 private:
  const Graph* g_;
};

struct EstimatorOutput {
  double estimate = 0.0;
  PrivacyBudget budget_spent;
  int rounds = 1;
  std::string algorithm;
  int k = 0;                    // star size, 0 when not applicable
  std::int64_t d_tilde = -1;    // degree cap used, -1 when not applicable
};

struct NoisyDegreeEstimate {
  double noisy_max = 0.0;       // max over users of degree + Laplace(1/eps0)
  std::int64_t d_tilde = 0;     // floor(max(noisy_max, 0))
  PrivacyBudget budget_spent;
};

// ---------------------------------------------------------------------------
// User-side releases.

// Projects the row to at most d_tilde neighbors, then releases the user's
// k-star count with Laplace noise of scale C(d_tilde, k-1) / eps.
double kstar_user_release(const NeighborList& a, double eps,
                          std::int64_t d_tilde, int k, std::size_t n,
                          const TrialRng& rng, const NoiseModel& noise);

// Second-round triangle message. Counts, among pairs j < k < owner of
// projected neighbors, how many are edges of the published graph (t) and how
// many exist at all (s), and releases t - p1 * s with Laplace noise. The
// noise scale defaults to d_tilde / eps2; with tight_scale it is reduced to
// d_tilde * (1 - p1) / eps2.
double two_rounds_user_release(const NeighborList& a,
                               const NoisyEdgeView& published, double p1,
                               double eps2, std::int64_t d_tilde,
                               std::size_t n, const TrialRng& rng,
                               const NoiseModel& noise, bool tight_scale);

// ---------------------------------------------------------------------------
// Protocols.

// One-round k-star estimation: sums per-user noisy star counts.
EstimatorOutput local_lap_kstar(const NeighborListSource& users, double eps,
                                std::int64_t d_tilde, int k,
                                const TrialRng& rng,
                                const NoiseModel& noise = real_noise());

// Non-private-input baseline: k-star count of the projected graph plus one
// Laplace draw of scale 2 * C(d_tilde, k-1) / eps.
EstimatorOutput central_lap_kstar(const Graph& g, double eps,
                                  std::int64_t d_tilde, int k,
                                  const TrialRng& rng,
                                  const NoiseModel& noise = real_noise());

// One-round triangle estimation from a fully randomized adjacency matrix.
// With use_empirical the four triple-class counts of the noisy graph are
// mapped back through the flip-probability transition; without it the raw
// noisy triangle count is returned.
EstimatorOutput local_rr_triangle(const NeighborListSource& users, double eps,
                                  bool use_empirical, const TrialRng& rng,
                                  const NoiseModel& noise = real_noise());

struct TwoRoundsOptions {
  bool tight_round2_noise = false;
  // Materialize the whole randomized adjacency matrix up front instead of
  // deriving bits on demand. Results are identical; eager costs O(n^2).
  bool eager = false;
};

// Two-round triangle estimation: randomized response on the adjacency bits,
// then per-user noisy counts of published-edge-closed wedges.
EstimatorOutput local_two_rounds_triangle(
    const NeighborListSource& users, double eps1, double eps2,
    std::int64_t d_tilde, const TrialRng& rng,
    const TwoRoundsOptions& options = {},
    const NoiseModel& noise = real_noise());

// Non-private-input baseline: triangle count of the projected graph plus one
// Laplace draw of scale d_tilde / eps.
EstimatorOutput central_lap_triangle(const Graph& g, double eps,
                                     std::int64_t d_tilde,
                                     const TrialRng& rng,
                                     const NoiseModel& noise = real_noise());

// One-round noisy maximum degree: each user releases degree + Laplace(1/eps0)
// and the collector takes the floor of the maximum, clamped at zero.
NoisyDegreeEstimate noisy_max_degree(const NeighborListSource& users,
                                     double eps0, const TrialRng& rng,
                                     const NoiseModel& noise = real_noise());

// Coefficients (a3, a2, a1, a0) with sum_i a_i * m_i the unbiased triangle
// estimate from noisy triple-class counts, for mu = (1 - p) / p > 1.
std::array<double, 4> triangle_coefficients(double mu);

// Combines a triangle estimate and a 2-star estimate into a clustering
// coefficient in [0, 1]; budgets add componentwise.
EstimatorOutput estimate_clustering(const EstimatorOutput& triangles,
                                    const EstimatorOutput& two_stars);

// ---------------------------------------------------------------------------
// Published-graph views.

// Derives released randomized-response bits on demand, touching each user's
// row at most once and caching it. Equivalent bit for bit to materializing
// every row eagerly, without the O(n^2) storage.
class LazyNoisyEdges final : public NoisyEdgeView {
 public:
  LazyNoisyEdges(const NeighborListSource& users, double flip_prob,
                 const TrialRng& rng);
  ~LazyNoisyEdges() override;

  bool edge(NodeId u, NodeId v) const override;

 private:
  const NeighborListSource& users_;
  double flip_prob_;
  TrialRng rng_;
  mutable std::vector<std::unique_ptr<std::vector<NodeId>>> lower_rows_;
};

}  // namespace ldpgraph

#endif  // LDPGRAPH_ESTIMATORS_HPP_
