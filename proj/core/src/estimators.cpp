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

#include "ldpgraph/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ldpgraph/errors.hpp"

namespace ldpgraph {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double binomial_as_double(std::int64_t n, std::int64_t k) {
  return static_cast<double>(checked_binomial(n, k));
}

// Aggregator scale factors below 1e-12 would blow estimates up by 12+ orders
// of magnitude; treat them as a caller error rather than returning noise.
double checked_inverse_scale(double eps1) {
  if (eps1 < 1e-12) {
    throw ConditioningError(
        "first-round privacy parameter too small to de-bias");
  }
  return eps1;
}

}  // namespace

double kstar_user_release(const NeighborList& a, double eps,
                          std::int64_t d_tilde, int k, std::size_t n,
                          const TrialRng& rng, const NoiseModel& noise) {
  require(eps > 0.0, "privacy parameter must be positive");
  require(d_tilde >= 0, "degree cap must be non-negative");
  require(k >= 1, "star size must be at least 1");

  RandomStream proj_stream = rng.stream(Role::kProjection, a.owner);
  const NeighborList capped = project(a, d_tilde, n, proj_stream);
  const double stars =
      binomial_as_double(static_cast<std::int64_t>(capped.degree()), k);
  const double scale = binomial_as_double(d_tilde, k - 1) / eps;
  RandomStream noise_stream = rng.stream(Role::kCountNoise, a.owner);
  return stars + noise.laplace(noise_stream, scale);
}

EstimatorOutput local_lap_kstar(const NeighborListSource& users, double eps,
                                std::int64_t d_tilde, int k,
                                const TrialRng& rng, const NoiseModel& noise) {
  require(eps > 0.0, "privacy parameter must be positive");
  require(d_tilde >= 0, "degree cap must be non-negative");
  require(k >= 1, "star size must be at least 1");

  const std::size_t n = users.node_count();
  double sum = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    sum += kstar_user_release(users.neighbor_list(i), eps, d_tilde, k, n, rng,
                              noise);
  }
  return {sum, {0.0, eps, 0.0}, 1, "local-lap-kstar", k, d_tilde};
}

namespace {

// Per-row projection for the server-side baselines. An edge survives only if
// both endpoints kept it, so every degree ends up at or below the cap.
Graph project_graph(const Graph& g, std::int64_t d_tilde,
                    const TrialRng& rng) {
  if (max_degree(g) <= d_tilde) return g;

  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> kept(n);
  for (NodeId i = 0; i < n; ++i) {
    RandomStream proj_stream = rng.stream(Role::kProjection, i);
    kept[i] = project(g.neighbor_list(i), d_tilde, n, proj_stream).bits;
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : kept[u]) {
      if (v > u && std::binary_search(kept[v].begin(), kept[v].end(), u)) {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace

EstimatorOutput central_lap_kstar(const Graph& g, double eps,
                                  std::int64_t d_tilde, int k,
                                  const TrialRng& rng,
                                  const NoiseModel& noise) {
  require(eps > 0.0, "privacy parameter must be positive");
  require(d_tilde >= 0, "degree cap must be non-negative");
  require(k >= 1, "star size must be at least 1");

  const Graph capped = project_graph(g, d_tilde, rng);
  const double stars = static_cast<double>(count_kstars(capped, k));
  const double scale = 2.0 * binomial_as_double(d_tilde, k - 1) / eps;
  RandomStream noise_stream = rng.stream(Role::kCentralNoise, 0);
  const double estimate = stars + noise.laplace(noise_stream, scale);
  return {estimate, {0.0, eps, 0.0}, 1, "central-lap-kstar", k, d_tilde};
}

std::array<double, 4> triangle_coefficients(double mu) {
  require(mu > 1.0, "likelihood ratio must exceed 1");
  const double denom = (mu - 1.0) * (mu - 1.0) * (mu - 1.0);
  return {mu * mu * mu / denom, -mu * mu / denom, mu / denom, -1.0 / denom};
}

EstimatorOutput local_rr_triangle(const NeighborListSource& users, double eps,
                                  bool use_empirical, const TrialRng& rng,
                                  const NoiseModel& noise) {
  require(eps > 0.0, "privacy parameter must be positive");

  const std::size_t n = users.node_count();
  NoisyGraph released(n);
  for (NodeId i = 0; i < n; ++i) {
    released.set_lower_row(i, rr_lower_row(users.neighbor_list(i), eps, rng,
                                           noise));
  }
  const SubgraphClassCounts m = released.count_subgraph_classes();

  double estimate = static_cast<double>(m.m3);
  if (use_empirical) {
    const double p = noise.flip_prob(eps);
    if (p > 0.0) {
      // mu = (1-p)/p; equals e^eps for the standard channel. A noiseless
      // channel (p == 0) needs no de-biasing.
      const auto [a3, a2, a1, a0] = triangle_coefficients((1.0 - p) / p);
      estimate = a3 * static_cast<double>(m.m3) +
                 a2 * static_cast<double>(m.m2) +
                 a1 * static_cast<double>(m.m1) +
                 a0 * static_cast<double>(m.m0);
    }
  }
  const char* name = use_empirical ? "local-rr-tri" : "local-rr-tri-noemp";
  return {estimate, {0.0, eps, 0.0}, 1, name, 0, -1};
}

double two_rounds_user_release(const NeighborList& a,
                               const NoisyEdgeView& published, double p1,
                               double eps2, std::int64_t d_tilde,
                               std::size_t n, const TrialRng& rng,
                               const NoiseModel& noise, bool tight_scale) {
  require(eps2 > 0.0, "second-round privacy parameter must be positive");
  require(d_tilde >= 0, "degree cap must be non-negative");
  require(p1 >= 0.0 && p1 < 0.5, "flip probability must be in [0, 0.5)");

  RandomStream proj_stream = rng.stream(Role::kProjection, a.owner);
  const NeighborList capped = project(a, d_tilde, n, proj_stream);

  std::vector<NodeId> lower;
  lower.reserve(capped.bits.size());
  for (NodeId v : capped.bits) {
    if (v < a.owner) lower.push_back(v);
  }

  const auto deg = static_cast<std::int64_t>(lower.size());
  const double s = static_cast<double>(deg * (deg - 1) / 2);
  std::int64_t t = 0;
  for (std::size_t x = 0; x + 1 < lower.size(); ++x) {
    for (std::size_t y = x + 1; y < lower.size(); ++y) {
      t += published.edge(lower[x], lower[y]) ? 1 : 0;
    }
  }

  double scale = static_cast<double>(d_tilde) / eps2;
  if (tight_scale) scale *= 1.0 - p1;
  RandomStream noise_stream = rng.stream(Role::kTriangleNoise, a.owner);
  return static_cast<double>(t) - p1 * s + noise.laplace(noise_stream, scale);
}

EstimatorOutput local_two_rounds_triangle(const NeighborListSource& users,
                                          double eps1, double eps2,
                                          std::int64_t d_tilde,
                                          const TrialRng& rng,
                                          const TwoRoundsOptions& options,
                                          const NoiseModel& noise) {
  require(eps1 > 0.0, "first-round privacy parameter must be positive");
  require(eps2 > 0.0, "second-round privacy parameter must be positive");
  require(d_tilde >= 0, "degree cap must be non-negative");
  checked_inverse_scale(eps1);

  const std::size_t n = users.node_count();
  const double p1 = noise.flip_prob(eps1);

  std::optional<NoisyGraph> released;
  std::unique_ptr<NoisyEdgeView> view;
  if (options.eager) {
    released.emplace(n);
    for (NodeId i = 0; i < n; ++i) {
      released->set_lower_row(i, rr_lower_row(users.neighbor_list(i), eps1,
                                              rng, noise));
    }
    view = std::make_unique<MaterializedNoisyEdges>(*released);
  } else {
    view = std::make_unique<LazyNoisyEdges>(users, p1, rng);
  }

  double sum = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    sum += two_rounds_user_release(users.neighbor_list(i), *view, p1, eps2,
                                   d_tilde, n, rng, noise,
                                   options.tight_round2_noise);
  }
  const double estimate = sum / (1.0 - 2.0 * p1);
  return {estimate, {0.0, eps1, eps2}, 2, "local-2rounds-tri", 0, d_tilde};
}

EstimatorOutput central_lap_triangle(const Graph& g, double eps,
                                     std::int64_t d_tilde,
                                     const TrialRng& rng,
                                     const NoiseModel& noise) {
  require(eps > 0.0, "privacy parameter must be positive");
  require(d_tilde >= 0, "degree cap must be non-negative");

  const Graph capped = project_graph(g, d_tilde, rng);
  const double triangles = static_cast<double>(count_triangles(capped));
  RandomStream noise_stream = rng.stream(Role::kCentralNoise, 0);
  const double estimate =
      triangles +
      noise.laplace(noise_stream, static_cast<double>(d_tilde) / eps);
  return {estimate, {0.0, eps, 0.0}, 1, "central-lap-tri", 0, d_tilde};
}

NoisyDegreeEstimate noisy_max_degree(const NeighborListSource& users,
                                     double eps0, const TrialRng& rng,
                                     const NoiseModel& noise) {
  require(eps0 > 0.0, "privacy parameter must be positive");
  const std::size_t n = users.node_count();
  require(n > 0, "at least one user is required");

  double noisy_max = -std::numeric_limits<double>::infinity();
  for (NodeId i = 0; i < n; ++i) {
    const auto degree =
        static_cast<double>(users.neighbor_list(i).degree());
    RandomStream noise_stream = rng.stream(Role::kDegreeNoise, i);
    noisy_max =
        std::max(noisy_max, degree + noise.laplace(noise_stream, 1.0 / eps0));
  }
  NoisyDegreeEstimate out;
  out.noisy_max = noisy_max;
  out.d_tilde = static_cast<std::int64_t>(std::floor(std::max(noisy_max, 0.0)));
  out.budget_spent = {eps0, 0.0, 0.0};
  return out;
}

EstimatorOutput estimate_clustering(const EstimatorOutput& triangles,
                                    const EstimatorOutput& two_stars) {
  require(two_stars.k == 2, "second input must be a 2-star estimate");
  EstimatorOutput out;
  out.estimate = clustering_coefficient(triangles.estimate, two_stars.estimate);
  out.budget_spent = triangles.budget_spent + two_stars.budget_spent;
  out.rounds = std::max(triangles.rounds, two_stars.rounds);
  out.algorithm = "clustering";
  out.k = 2;
  out.d_tilde = triangles.d_tilde;
  return out;
}

LazyNoisyEdges::LazyNoisyEdges(const NeighborListSource& users,
                               double flip_prob, const TrialRng& rng)
    : users_(users),
      flip_prob_(flip_prob),
      rng_(rng),
      lower_rows_(users.node_count()) {}

LazyNoisyEdges::~LazyNoisyEdges() = default;

bool LazyNoisyEdges::edge(NodeId u, NodeId v) const {
  const auto [hi, lo] = u > v ? std::pair{u, v} : std::pair{v, u};
  auto& row = lower_rows_[hi];
  if (row == nullptr) {
    const NeighborList a = users_.neighbor_list(hi);
    auto cached = std::make_unique<std::vector<NodeId>>();
    cached->reserve(a.bits.size());
    for (NodeId w : a.bits) {
      if (w < hi) cached->push_back(w);
    }
    row = std::move(cached);
  }
  const int true_bit =
      std::binary_search(row->begin(), row->end(), lo) ? 1 : 0;
  RandomStream stream = rr_pair_stream(rng_, hi, lo);
  return rr_bit_with_prob(stream, flip_prob_, true_bit) != 0;
}

}  // namespace ldpgraph
