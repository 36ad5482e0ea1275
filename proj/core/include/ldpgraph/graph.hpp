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

#ifndef LDPGRAPH_GRAPH_HPP_
#define LDPGRAPH_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "ldpgraph/random.hpp"

namespace ldpgraph {

using NodeId = std::uint32_t;
using Int128 = __int128;

// One user's private adjacency row: the set of her neighbors, sorted
// ascending, never containing `owner`. This is the only view of the graph a
// simulated user-side randomizer receives.
struct NeighborList {
  NodeId owner = 0;
  std::vector<NodeId> bits;

  std::size_t degree() const { return bits.size(); }
  bool contains(NodeId v) const;
};

// Counts of unordered node triples by number of internal edges:
// m3 triples spanning 3 edges, m2 spanning 2, m1 spanning 1, m0 spanning 0.
// m3 + m2 + m1 + m0 == C(n, 3).
struct SubgraphClassCounts {
  std::int64_t m3 = 0;
  std::int64_t m2 = 0;
  std::int64_t m1 = 0;
  std::int64_t m0 = 0;
};

// Undirected simple graph over nodes 0..n-1 in CSR form with sorted rows.
// No self-loops, no duplicate edges; adjacency is symmetric by construction.
class Graph {
 public:
  Graph() = default;

  // Takes any edge list (unordered endpoints, duplicates and self-loops
  // allowed); self-loops are dropped and duplicates collapsed. Endpoints
  // must be < n.
  static Graph from_edges(std::size_t n,
                          std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_.size() / 2); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  NeighborList neighbor_list(NodeId v) const;

  bool operator==(const Graph& other) const = default;

 private:
  // offsets_.size() == n + 1; adj_ holds each edge twice.
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adj_;
};

// Per-load bookkeeping for edge-list files.
struct EdgeListSummary {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
};

// Reads a whitespace-separated "u v" edge list. '#' starts a comment line,
// blank lines are skipped. Node ids may be arbitrary non-negative integers;
// they are remapped to dense 0..n-1 in order of first appearance. Self-loops
// and duplicate edges are dropped silently and tallied in `summary`.
// Throws ParseError (malformed line) or std::runtime_error (I/O).
Graph load_edge_list(const std::filesystem::path& path,
                     EdgeListSummary* summary = nullptr);

// Writes "u v" lines, one per edge with u < v, in ascending order.
void save_edge_list(const Graph& g, std::ostream& out);

// G(n, alpha): each of the C(n, 2) node pairs is an edge independently with
// probability alpha. Deterministic in (n, alpha, seed).
Graph generate_er(std::size_t n, double alpha, std::uint64_t seed);

// Induced subgraph on n_sub distinct nodes drawn uniformly at random,
// relabeled 0..n_sub-1 preserving the relative order of the original ids.
Graph sample_induced(const Graph& g, std::size_t n_sub, std::uint64_t seed);

// Caps a neighbor list at d_tilde neighbors. Lists at or under the cap pass
// through unchanged. Oversized lists keep the first d_tilde of their
// neighbors encountered while walking a uniformly random permutation of all
// n node ids, so each user's truncation depends only on her own draw.
NeighborList project(const NeighborList& a, std::int64_t d_tilde,
                     std::size_t n, RandomStream& stream);

// Deterministic variant: walks `order` (a permutation of 0..n-1, or any
// sequence covering the list's neighbors) instead of drawing one.
NeighborList project_with_order(const NeighborList& a, std::int64_t d_tilde,
                                std::span<const NodeId> order);

// C(n, k) computed exactly in 128-bit arithmetic.
// Throws std::overflow_error if the value does not fit.
Int128 checked_binomial(std::int64_t n, std::int64_t k);

// Number of unordered node triples spanning three edges.
std::int64_t count_triangles(const Graph& g);

// Number of k-stars: sum over nodes of C(degree, k). k >= 1.
// Throws std::overflow_error if the sum leaves 128-bit range.
Int128 count_kstars(const Graph& g, int k);

std::int64_t max_degree(const Graph& g);

// 3 * triangles / two_stars, clamped to [0, 1]; zero when the denominator
// is not positive.
double clustering_coefficient(double triangles, double two_stars);

// Classifies all C(n, 3) triples by identities on (n, |E|, triangle count,
// sum of C(d_i, 2)) rather than by triple enumeration.
SubgraphClassCounts count_subgraph_classes(const Graph& g);

// Identity-based classification from precomputed parts, shared by every
// graph representation that can produce them.
SubgraphClassCounts subgraph_classes_from_parts(std::size_t n,
                                                std::int64_t edges,
                                                std::int64_t triangles,
                                                Int128 sum_deg_choose2);

}  // namespace ldpgraph

#endif  // LDPGRAPH_GRAPH_HPP_
