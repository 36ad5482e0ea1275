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

#include "ldpgraph/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

namespace ldpgraph {

double rr_flip_prob(double eps) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("privacy parameter must be non-negative");
  }
  return 1.0 / (std::exp(eps) + 1.0);
}

double laplace(RandomStream& stream, double scale) {
  if (!(scale >= 0.0)) {
    throw std::invalid_argument("scale must be non-negative");
  }
  if (scale == 0.0) return 0.0;
  // u is uniform on the open interval (-0.5, 0.5); both endpoints are
  // excluded so log1p never sees -1.
  const double u = stream.uniform_positive() - 0.5;
  const double sign = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
  return scale * sign * std::log1p(-2.0 * std::abs(u));
}

int rr_bit_with_prob(RandomStream& stream, double flip_prob, int bit) {
  const bool flip = stream.uniform() < flip_prob;
  return flip ? 1 - bit : bit;
}

int rr_bit(RandomStream& stream, double eps, int bit) {
  return rr_bit_with_prob(stream, rr_flip_prob(eps), bit);
}

double NoiseModel::laplace(RandomStream& stream, double scale) const {
  return ldpgraph::laplace(stream, scale);
}

double NoiseModel::flip_prob(double eps) const { return rr_flip_prob(eps); }

double ZeroNoise::laplace(RandomStream& /*stream*/, double scale) const {
  if (!(scale >= 0.0)) {
    throw std::invalid_argument("scale must be non-negative");
  }
  return 0.0;
}

double ZeroNoise::flip_prob(double eps) const {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("privacy parameter must be non-negative");
  }
  return 0.0;
}

const NoiseModel& real_noise() {
  static const NoiseModel model;
  return model;
}

RandomStream rr_pair_stream(const TrialRng& rng, NodeId i, NodeId j) {
  const std::uint64_t row = i;
  return rng.stream(Role::kEdgeFlip, row * (row - 1) / 2 + j);
}

std::vector<std::uint8_t> rr_lower_row(const NeighborList& a, double eps,
                                       const TrialRng& rng,
                                       const NoiseModel& noise) {
  const double p = noise.flip_prob(eps);
  std::vector<std::uint8_t> row(a.owner, 0);
  for (NodeId v : a.bits) {
    if (v < a.owner) row[v] = 1;
  }
  for (NodeId j = 0; j < a.owner; ++j) {
    RandomStream stream = rr_pair_stream(rng, a.owner, j);
    row[j] = static_cast<std::uint8_t>(rr_bit_with_prob(stream, p, row[j]));
  }
  return row;
}

}  // namespace ldpgraph
