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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ldpgraph/errors.hpp"
#include "ldpgraph/graph.hpp"
#include "ldpgraph/mechanisms.hpp"
#include "oracles.hpp"

namespace ldpgraph {
namespace {

using testing::RecordingSource;
using testing::complete_graph;
using testing::row_times_matrix;
using testing::star_graph;
using testing::triple_class_transition;

// Keeps the real randomized-response channel but silences additive noise.
class LaplaceFreeNoise final : public NoiseModel {
 public:
  double laplace(RandomStream&, double scale) const override {
    if (!(scale >= 0.0)) throw std::invalid_argument("negative scale");
    return 0.0;
  }
};

// Deterministic additive noise for exercising floors and clamps.
class ConstantLaplaceNoise final : public NoiseModel {
 public:
  explicit ConstantLaplaceNoise(double value) : value_(value) {}
  double laplace(RandomStream&, double) const override { return value_; }
  double flip_prob(double) const override { return 0.0; }

 private:
  double value_;
};

TEST(TriangleCoefficientsTest, InvertTransitionMatrixFirstComponent) {
  for (double mu : {1.1, std::exp(1.0), std::exp(2.0), 20.0}) {
    const auto q = triple_class_transition(mu);
    const auto a = triangle_coefficients(mu);
    for (int row = 0; row < 4; ++row) {
      double dot = 0.0;
      for (int col = 0; col < 4; ++col) dot += q[row][col] * a[col];
      EXPECT_NEAR(dot, row == 0 ? 1.0 : 0.0, 1e-9)
          << "mu=" << mu << " row=" << row;
    }
    // Any true class mix: the de-biased expectation recovers the triangle
    // component alone.
    const std::array<double, 4> c{41.0, -7.5, 13.25, 99.0};
    const auto expected_noisy = row_times_matrix(c, q);
    double est = 0.0;
    for (int j = 0; j < 4; ++j) est += a[j] * expected_noisy[j];
    EXPECT_NEAR(est, c[0], 1e-7 * std::abs(c[0])) << "mu=" << mu;
  }
}

TEST(TriangleCoefficientsTest, TransitionOracleMatchesFrozenEntries) {
  // mu = 2: denominator 27, middle entries (mu^3 + 2 mu) and (2 mu^2 + 1).
  const auto q = triple_class_transition(2.0);
  EXPECT_NEAR(q[0][0], 8.0 / 27.0, 1e-15);
  EXPECT_NEAR(q[0][3], 1.0 / 27.0, 1e-15);
  EXPECT_NEAR(q[1][1], 12.0 / 27.0, 1e-15);
  EXPECT_NEAR(q[2][1], 9.0 / 27.0, 1e-15);
  EXPECT_NEAR(q[3][2], 12.0 / 27.0, 1e-15);
  for (int row = 0; row < 4; ++row) {
    EXPECT_NEAR(q[row][0] + q[row][1] + q[row][2] + q[row][3], 1.0, 1e-12);
  }
}

TEST(TriangleCoefficientsTest, RequireLikelihoodRatioAboveOne) {
  EXPECT_THROW(triangle_coefficients(1.0), std::invalid_argument);
  EXPECT_THROW(triangle_coefficients(0.5), std::invalid_argument);
}

TEST(EstimatorsTest, LocalLapKstarZeroNoiseEqualsExactCount) {
  const ZeroNoise quiet;
  int seed = 0;
  for (std::size_t n : {4u, 15u, 33u}) {
    for (double alpha : {0.2, 0.6}) {
      const Graph g = generate_er(n, alpha, 40 + seed++);
      const GraphSource users(g);
      for (int k : {1, 2, 3}) {
        const EstimatorOutput out = local_lap_kstar(
            users, 1.0, max_degree(g), k, TrialRng(5, 0), quiet);
        EXPECT_DOUBLE_EQ(out.estimate,
                         static_cast<double>(count_kstars(g, k)));
        EXPECT_EQ(out.rounds, 1);
        EXPECT_EQ(out.k, k);
        EXPECT_DOUBLE_EQ(out.budget_spent.eps1, 1.0);
        EXPECT_DOUBLE_EQ(out.budget_spent.eps0, 0.0);
      }
    }
  }
}

TEST(EstimatorsTest, LocalLapKstarCapReducesUniformDegrees) {
  // Every K4 node ends at exactly two neighbors under a cap of two, so the
  // noiseless sum is 4 * C(2, 2).
  const Graph g = complete_graph(4);
  const GraphSource users(g);
  const EstimatorOutput out =
      local_lap_kstar(users, 1.0, 2, 2, TrialRng(31, 0), ZeroNoise{});
  EXPECT_DOUBLE_EQ(out.estimate, 4.0);
  EXPECT_EQ(out.d_tilde, 2);
}

TEST(EstimatorsTest, CentralLapKstarZeroNoiseEqualsExactCount) {
  const ZeroNoise quiet;
  const Graph g = generate_er(30, 0.3, 91);
  for (int k : {2, 3}) {
    const EstimatorOutput out =
        central_lap_kstar(g, 1.0, max_degree(g), k, TrialRng(6, 0), quiet);
    EXPECT_DOUBLE_EQ(out.estimate, static_cast<double>(count_kstars(g, k)));
  }
  const EstimatorOutput capped =
      central_lap_kstar(g, 1.0, 0, 2, TrialRng(6, 0), quiet);
  EXPECT_DOUBLE_EQ(capped.estimate, 0.0);
}

TEST(EstimatorsTest, LocalRrZeroNoiseEqualsExactCount) {
  const ZeroNoise quiet;
  int seed = 0;
  for (std::size_t n : {3u, 20u, 50u}) {
    for (double alpha : {0.15, 0.5}) {
      const Graph g = generate_er(n, alpha, 600 + seed++);
      const GraphSource users(g);
      const double truth = static_cast<double>(count_triangles(g));
      for (bool empirical : {true, false}) {
        const EstimatorOutput out =
            local_rr_triangle(users, 1.0, empirical, TrialRng(8, 0), quiet);
        EXPECT_DOUBLE_EQ(out.estimate, truth)
            << "n=" << n << " empirical=" << empirical;
        EXPECT_EQ(out.rounds, 1);
        EXPECT_EQ(out.d_tilde, -1);
      }
    }
  }
}

TEST(EstimatorsTest, LocalRrEmpiricalMeanTracksTruthOnSmallGraph) {
  const Graph g = generate_er(60, 0.2, 5150);
  const GraphSource users(g);
  const double truth = static_cast<double>(count_triangles(g));
  const int kTrials = 40;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const double est =
        local_rr_triangle(users, 2.0, true, TrialRng(42, t)).estimate;
    sum += est;
    sumsq += est * est;
  }
  const double mean = sum / kTrials;
  const double sd =
      std::sqrt((sumsq - kTrials * mean * mean) / (kTrials - 1));
  EXPECT_NEAR(mean, truth, 4.0 * sd / std::sqrt(kTrials));
}

TEST(EstimatorsTest, LocalRrRawCountIsDominatedByFlipNoiseOnEmptyGraph) {
  const Graph g = Graph::from_edges(60, {});
  const GraphSource users(g);
  double raw_sum = 0.0;
  const int kTrials = 20;
  for (int t = 0; t < kTrials; ++t) {
    raw_sum += local_rr_triangle(users, 1.0, false, TrialRng(77, t)).estimate;
  }
  // About C(60, 3) p^3 ~ 665 phantom triangles per trial at eps = 1.
  EXPECT_GT(raw_sum / kTrials, 300.0);
}

TEST(EstimatorsTest, TwoRoundsZeroNoiseEqualsExactCount) {
  const ZeroNoise quiet;
  int seed = 0;
  for (std::size_t n : {4u, 18u, 40u}) {
    for (double alpha : {0.2, 0.5}) {
      const Graph g = generate_er(n, alpha, 1200 + seed++);
      const GraphSource users(g);
      const double truth = static_cast<double>(count_triangles(g));
      for (bool eager : {false, true}) {
        TwoRoundsOptions options;
        options.eager = eager;
        const EstimatorOutput out = local_two_rounds_triangle(
            users, 1.0, 1.0, max_degree(g), TrialRng(9, 0), options, quiet);
        EXPECT_DOUBLE_EQ(out.estimate, truth)
            << "n=" << n << " eager=" << eager;
        EXPECT_EQ(out.rounds, 2);
        EXPECT_DOUBLE_EQ(out.budget_spent.eps1, 1.0);
        EXPECT_DOUBLE_EQ(out.budget_spent.eps2, 1.0);
      }
    }
  }
}

TEST(EstimatorsTest, TwoRoundsReleaseMatchesHandComputationOnK4) {
  // With the true K4 published, the users' lower wedge counts are t =
  // (0, 0, 1, 3) and s = (0, 0, 1, 3), so the de-biased estimate is
  // (4 - 4 p1) / (1 - 2 p1).
  const Graph g = complete_graph(4);
  const LaplaceFreeNoise additive_free;
  NoisyGraph published_bits(4);
  published_bits.set_lower_row(1, {1});
  published_bits.set_lower_row(2, {1, 1});
  published_bits.set_lower_row(3, {1, 1, 1});
  const MaterializedNoisyEdges published(published_bits);

  for (double p1 : {0.1, 0.3}) {
    double sum = 0.0;
    for (NodeId i = 0; i < 4; ++i) {
      sum += two_rounds_user_release(g.neighbor_list(i), published, p1, 1.0,
                                     3, 4, TrialRng(1, 0), additive_free,
                                     false);
    }
    const double estimate = sum / (1.0 - 2.0 * p1);
    EXPECT_NEAR(estimate, (4.0 - 4.0 * p1) / (1.0 - 2.0 * p1), 1e-12)
        << "p1=" << p1;
  }
}

TEST(EstimatorsTest, TwoRoundsAggregatorScalesByInverseOfOneMinusTwoP) {
  // Replays the protocol's own released rows and messages, then checks the
  // estimate is their sum rescaled, with 1/(1-2p) equal to the closed form
  // (e^eps + 1)/(e^eps - 1).
  const Graph g = generate_er(25, 0.3, 321);
  const GraphSource users(g);
  const double eps1 = 0.8;
  const double eps2 = 1.3;
  const std::int64_t cap = max_degree(g);
  const TrialRng rng(64, 3);
  const LaplaceFreeNoise additive_free;

  TwoRoundsOptions options;
  options.eager = true;
  const EstimatorOutput out = local_two_rounds_triangle(
      users, eps1, eps2, cap, rng, options, additive_free);

  const double p1 = rr_flip_prob(eps1);
  NoisyGraph released(25);
  for (NodeId i = 0; i < 25; ++i) {
    released.set_lower_row(
        i, rr_lower_row(g.neighbor_list(i), eps1, rng, additive_free));
  }
  const MaterializedNoisyEdges view(released);
  double sum = 0.0;
  for (NodeId i = 0; i < 25; ++i) {
    sum += two_rounds_user_release(g.neighbor_list(i), view, p1, eps2, cap,
                                   25, rng, additive_free, false);
  }
  EXPECT_DOUBLE_EQ(out.estimate, sum / (1.0 - 2.0 * p1));
  EXPECT_NEAR(1.0 / (1.0 - 2.0 * p1),
              (std::exp(eps1) + 1.0) / (std::exp(eps1) - 1.0), 1e-12);
}

TEST(EstimatorsTest, TwoRoundsLazyAndEagerAgreeBitForBit) {
  int seed = 0;
  for (std::size_t n : {10u, 31u, 70u}) {
    const Graph g = generate_er(n, 0.3, 2500 + seed++);
    const GraphSource users(g);
    for (double eps1 : {0.5, 2.0}) {
      TwoRoundsOptions lazy;
      TwoRoundsOptions eager;
      eager.eager = true;
      const double a = local_two_rounds_triangle(users, eps1, 1.0, 5,
                                                 TrialRng(7, 2), lazy)
                           .estimate;
      const double b = local_two_rounds_triangle(users, eps1, 1.0, 5,
                                                 TrialRng(7, 2), eager)
                           .estimate;
      EXPECT_EQ(a, b) << "n=" << n << " eps1=" << eps1;
    }
  }
}

TEST(EstimatorsTest, TwoRoundsVanishingFirstRoundBudgetIsRejected) {
  const Graph g = complete_graph(5);
  const GraphSource users(g);
  EXPECT_THROW(
      local_two_rounds_triangle(users, 1e-13, 1.0, 4, TrialRng(0, 0)),
      ConditioningError);
}

TEST(EstimatorsTest, ArgumentValidation) {
  const Graph g = complete_graph(4);
  const GraphSource users(g);
  const TrialRng rng(0, 0);
  EXPECT_THROW(local_lap_kstar(users, 0.0, 3, 2, rng), std::invalid_argument);
  EXPECT_THROW(local_lap_kstar(users, 1.0, -1, 2, rng),
               std::invalid_argument);
  EXPECT_THROW(local_lap_kstar(users, 1.0, 3, 0, rng), std::invalid_argument);
  EXPECT_THROW(local_rr_triangle(users, -1.0, true, rng),
               std::invalid_argument);
  EXPECT_THROW(local_two_rounds_triangle(users, 1.0, 0.0, 3, rng),
               std::invalid_argument);
  EXPECT_THROW(central_lap_triangle(g, 1.0, -2, rng), std::invalid_argument);
  EXPECT_THROW(noisy_max_degree(users, 0.0, rng), std::invalid_argument);

  const Graph none;
  const GraphSource nobody(none);
  EXPECT_THROW(noisy_max_degree(nobody, 1.0, rng), std::invalid_argument);

  const NoisyGraph empty(4);
  const MaterializedNoisyEdges view(empty);
  EXPECT_THROW(two_rounds_user_release(g.neighbor_list(1), view, 0.5, 1.0, 3,
                                       4, rng, real_noise(), false),
               std::invalid_argument);
}

TEST(EstimatorsTest, ProtocolsTouchEachPrivateRowABoundedNumberOfTimes) {
  const Graph g = generate_er(30, 0.4, 404);
  const TrialRng rng(11, 0);

  RecordingSource kstar_users(g);
  local_lap_kstar(kstar_users, 1.0, 5, 2, rng);
  for (int reads : kstar_users.reads()) EXPECT_EQ(reads, 1);

  RecordingSource rr_users(g);
  local_rr_triangle(rr_users, 1.0, true, rng);
  for (int reads : rr_users.reads()) EXPECT_EQ(reads, 1);

  RecordingSource degree_users(g);
  noisy_max_degree(degree_users, 0.5, rng);
  for (int reads : degree_users.reads()) EXPECT_EQ(reads, 1);

  RecordingSource eager_users(g);
  TwoRoundsOptions eager;
  eager.eager = true;
  local_two_rounds_triangle(eager_users, 1.0, 1.0, 5, rng, eager);
  for (int reads : eager_users.reads()) EXPECT_EQ(reads, 2);

  // Lazily derived rows add at most one extra touch per user.
  RecordingSource lazy_users(g);
  local_two_rounds_triangle(lazy_users, 1.0, 1.0, 5, rng);
  for (int reads : lazy_users.reads()) {
    EXPECT_GE(reads, 1);
    EXPECT_LE(reads, 2);
  }
}

TEST(EstimatorsTest, NoisyMaxDegreeZeroNoiseRecoversTrueMax) {
  const Graph g = generate_er(40, 0.3, 58);
  const GraphSource users(g);
  const NoisyDegreeEstimate est =
      noisy_max_degree(users, 0.5, TrialRng(2, 0), ZeroNoise{});
  EXPECT_EQ(est.d_tilde, max_degree(g));
  EXPECT_DOUBLE_EQ(est.noisy_max, static_cast<double>(max_degree(g)));
  EXPECT_DOUBLE_EQ(est.budget_spent.eps0, 0.5);
}

TEST(EstimatorsTest, NoisyMaxDegreeFloorsAndClampsAtZero) {
  const Graph star = star_graph(9);
  const GraphSource users(star);
  const NoisyDegreeEstimate up =
      noisy_max_degree(users, 0.5, TrialRng(2, 0), ConstantLaplaceNoise{0.9});
  EXPECT_EQ(up.d_tilde, 9);
  const NoisyDegreeEstimate down =
      noisy_max_degree(users, 0.5, TrialRng(2, 0),
                       ConstantLaplaceNoise{-0.3});
  EXPECT_EQ(down.d_tilde, 8);

  const Graph empty = Graph::from_edges(3, {});
  const GraphSource lonely(empty);
  const NoisyDegreeEstimate clamped = noisy_max_degree(
      lonely, 0.5, TrialRng(2, 0), ConstantLaplaceNoise{-5.7});
  EXPECT_EQ(clamped.d_tilde, 0);
}

TEST(EstimatorsTest, CentralLapTriangleZeroNoiseEqualsExactCount) {
  const Graph g = generate_er(35, 0.3, 73);
  const EstimatorOutput out = central_lap_triangle(
      g, 1.0, max_degree(g), TrialRng(3, 0), ZeroNoise{});
  EXPECT_DOUBLE_EQ(out.estimate, static_cast<double>(count_triangles(g)));
  EXPECT_EQ(out.rounds, 1);
}

TEST(EstimatorsTest, EstimateClusteringCombinesBudgetsAndValues) {
  EstimatorOutput tri;
  tri.estimate = 5.0;
  tri.budget_spent = {0.0, 0.5, 0.5};
  tri.rounds = 2;
  tri.d_tilde = 7;
  EstimatorOutput star;
  star.estimate = 20.0;
  star.budget_spent = {0.1, 0.9, 0.0};
  star.rounds = 1;
  star.k = 2;

  const EstimatorOutput cc = estimate_clustering(tri, star);
  EXPECT_DOUBLE_EQ(cc.estimate, 0.75);
  EXPECT_DOUBLE_EQ(cc.budget_spent.eps0, 0.1);
  EXPECT_DOUBLE_EQ(cc.budget_spent.eps1, 1.4);
  EXPECT_DOUBLE_EQ(cc.budget_spent.eps2, 0.5);
  EXPECT_EQ(cc.rounds, 2);
  EXPECT_EQ(cc.k, 2);
  EXPECT_EQ(cc.d_tilde, 7);
  EXPECT_EQ(cc.algorithm, "clustering");

  star.k = 3;
  EXPECT_THROW(estimate_clustering(tri, star), std::invalid_argument);
}

}  // namespace
}  // namespace ldpgraph
