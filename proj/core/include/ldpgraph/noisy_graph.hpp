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

#ifndef LDPGRAPH_NOISY_GRAPH_HPP_
#define LDPGRAPH_NOISY_GRAPH_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "ldpgraph/graph.hpp"

namespace ldpgraph {

// Dense undirected graph assembled from released lower adjacency rows.
// Row i stores one bit per column j < i, padded to a word boundary, so the
// whole structure takes about n(n-1)/2 bits; the symmetric query edge(u, v)
// reads the single stored bit for the pair.
class NoisyGraph {
 public:
  explicit NoisyGraph(std::size_t n);

  std::size_t node_count() const { return n_; }
  std::int64_t edge_count() const { return edge_count_; }
  std::int64_t degree(NodeId v) const { return degree_[v]; }

  // Installs user i's released row; bits[j] is the indicator of pair {i, j}
  // for j < i. Replaces any previously set bits of that row.
  void set_lower_row(NodeId i, const std::vector<std::uint8_t>& bits);

  bool edge(NodeId u, NodeId v) const {
    const auto [hi, lo] = u > v ? std::pair{u, v} : std::pair{v, u};
    return (words_[row_word_[hi] + (lo >> 6)] >> (lo & 63)) & 1;
  }

  // Triangle count by AND-ing stored rows 64 pairs at a time.
  std::int64_t count_triangles() const;

  SubgraphClassCounts count_subgraph_classes() const;

 private:
  std::size_t n_;
  std::int64_t edge_count_ = 0;
  std::vector<std::size_t> row_word_;  // index of row i's first word
  std::vector<std::uint64_t> words_;
  std::vector<std::int64_t> degree_;
};

// Collector-side view of the published round-one graph. Implementations
// must answer consistently for the lifetime of a protocol run.
class NoisyEdgeView {
 public:
  virtual ~NoisyEdgeView() = default;
  virtual bool edge(NodeId u, NodeId v) const = 0;
};

class MaterializedNoisyEdges final : public NoisyEdgeView {
 public:
  explicit MaterializedNoisyEdges(const NoisyGraph& g) : g_(g) {}
  bool edge(NodeId u, NodeId v) const override { return g_.edge(u, v); }

 private:
  const NoisyGraph& g_;
};

}  // namespace ldpgraph

#endif  // LDPGRAPH_NOISY_GRAPH_HPP_
