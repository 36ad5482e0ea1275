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

#include "ldpgraph/noisy_graph.hpp"

#include <bit>
#include <stdexcept>

namespace ldpgraph {

NoisyGraph::NoisyGraph(std::size_t n) : n_(n), degree_(n, 0) {
  row_word_.resize(n);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    row_word_[i] = offset;
    offset += (i + 63) / 64;
  }
  words_.assign(offset, 0);
}

void NoisyGraph::set_lower_row(NodeId i, const std::vector<std::uint8_t>& bits) {
  if (bits.size() != i) {
    throw std::invalid_argument("row length must equal its index");
  }
  for (NodeId j = 0; j < i; ++j) {
    std::uint64_t& word = words_[row_word_[i] + (j >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    const bool old = word & mask;
    const bool now = bits[j] != 0;
    if (old != now) {
      word ^= mask;
      const std::int64_t delta = now ? 1 : -1;
      edge_count_ += delta;
      degree_[i] += delta;
      degree_[j] += delta;
    }
  }
}

std::int64_t NoisyGraph::count_triangles() const {
  // A triangle j < k < i is found once, at its stored bit (i, k), by
  // intersecting the first k columns of rows i and k.
  std::int64_t triangles = 0;
  for (NodeId i = 2; i < n_; ++i) {
    const std::uint64_t* row_i = words_.data() + row_word_[i];
    for (NodeId k = 1; k < i; ++k) {
      if (!((row_i[k >> 6] >> (k & 63)) & 1)) continue;
      const std::uint64_t* row_k = words_.data() + row_word_[k];
      const std::size_t full = k >> 6;
      std::uint64_t counted = 0;
      for (std::size_t w = 0; w < full; ++w) {
        counted += static_cast<std::uint64_t>(
            std::popcount(row_i[w] & row_k[w]));
      }
      const unsigned rem = k & 63;
      if (rem != 0) {
        const std::uint64_t mask = (std::uint64_t{1} << rem) - 1;
        counted += static_cast<std::uint64_t>(
            std::popcount(row_i[full] & row_k[full] & mask));
      }
      triangles += static_cast<std::int64_t>(counted);
    }
  }
  return triangles;
}

SubgraphClassCounts NoisyGraph::count_subgraph_classes() const {
  Int128 sum_deg_choose2 = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    sum_deg_choose2 += checked_binomial(degree_[v], 2);
  }
  return subgraph_classes_from_parts(n_, edge_count_, count_triangles(),
                                     sum_deg_choose2);
}

}  // namespace ldpgraph
