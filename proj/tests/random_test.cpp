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

#include "ldpgraph/random.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

namespace ldpgraph {
namespace {

TEST(RandomStreamTest, SameKeyReplaysSameSequence) {
  const TrialRng rng(123, 7);
  RandomStream a = rng.stream(Role::kEdgeFlip, 42);
  RandomStream b = rng.stream(Role::kEdgeFlip, 42);
  for (int i = 0; i < 64; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
  }
}

TEST(RandomStreamTest, StreamsDoNotDependOnDerivationOrder) {
  const TrialRng rng(99, 3);

  std::vector<std::uint64_t> forward;
  for (std::uint64_t i = 0; i < 16; ++i) {
    forward.push_back(rng.stream(Role::kCountNoise, i).next_u64());
  }
  std::vector<std::uint64_t> backward(16);
  for (std::uint64_t i = 16; i-- > 0;) {
    backward[i] = rng.stream(Role::kCountNoise, i).next_u64();
  }
  EXPECT_EQ(forward, backward);
}

TEST(RandomStreamTest, DistinctTuplesGiveDistinctStreams) {
  // A collision in any coordinate of the derivation tuple would silently
  // correlate two parties' randomness, so spot-check every coordinate.
  std::vector<std::uint64_t> firsts = {
      TrialRng(1, 0).stream(Role::kEdgeFlip, 0).next_u64(),
      TrialRng(2, 0).stream(Role::kEdgeFlip, 0).next_u64(),
      TrialRng(1, 1).stream(Role::kEdgeFlip, 0).next_u64(),
      TrialRng(1, 0).stream(Role::kEdgeFlip, 1).next_u64(),
      TrialRng(1, 0).stream(Role::kDegreeNoise, 0).next_u64(),
      TrialRng(1, 0, 1).stream(Role::kEdgeFlip, 0).next_u64(),
  };
  for (std::size_t i = 0; i < firsts.size(); ++i) {
    for (std::size_t j = i + 1; j < firsts.size(); ++j) {
      EXPECT_NE(firsts[i], firsts[j]) << "tuple pair " << i << "," << j;
    }
  }
}

TEST(RandomStreamTest, WithLaneRedirectsEveryStream) {
  const TrialRng base(5, 11);
  const TrialRng lane1 = base.with_lane(1);
  EXPECT_NE(base.stream(Role::kProjection, 3).next_u64(),
            lane1.stream(Role::kProjection, 3).next_u64());
  // Lane 0 is the default.
  EXPECT_EQ(base.stream(Role::kProjection, 3).next_u64(),
            base.with_lane(0).stream(Role::kProjection, 3).next_u64());
}

TEST(RandomStreamTest, UniformStaysInHalfOpenUnitInterval) {
  RandomStream s = TrialRng(0, 0).stream(Role::kGraphGen, 0);
  double sum = 0.0;
  const int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Mean of U(0,1) is 1/2 with sd 1/sqrt(12); allow four standard errors.
  const double tol = 4.0 / std::sqrt(12.0 * kDraws);
  EXPECT_NEAR(sum / kDraws, 0.5, tol);
}

TEST(RandomStreamTest, UniformPositiveIsStrictlyPositive) {
  RandomStream s = TrialRng(17, 0).stream(Role::kGraphGen, 4);
  for (int i = 0; i < 10000; ++i) {
    ASSERT_GT(s.uniform_positive(), 0.0);
  }
}

TEST(RandomStreamTest, BoundedIsUnbiasedAcrossResidues) {
  RandomStream s = TrialRng(8, 2).stream(Role::kNodeSample, 0);
  const std::uint64_t bound = 10;
  std::vector<int> counts(bound, 0);
  const int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const std::uint64_t v = s.bounded(bound);
    ASSERT_LT(v, bound);
    ++counts[v];
  }
  const double expected = static_cast<double>(kDraws) / bound;
  const double tol = 4.0 * std::sqrt(expected * (1.0 - 1.0 / bound));
  for (std::uint64_t v = 0; v < bound; ++v) {
    EXPECT_NEAR(counts[v], expected, tol) << "residue " << v;
  }
}

}  // namespace
}  // namespace ldpgraph
