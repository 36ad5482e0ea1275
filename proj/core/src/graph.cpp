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

#include "ldpgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ldpgraph/errors.hpp"

namespace ldpgraph {

bool NeighborList::contains(NodeId v) const {
  return std::binary_search(bits.begin(), bits.end(), v);
}

Graph Graph::from_edges(std::size_t n,
                        std::vector<std::pair<NodeId, NodeId>> edges) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u > v) std::swap(u, v);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adj_.resize(edges.size() * 2);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adj_[cursor[u]++] = v;
    g.adj_[cursor[v]++] = u;
  }
  // Sorted pair insertion already leaves each row ascending, but keep the
  // invariant independent of construction order.
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

NeighborList Graph::neighbor_list(NodeId v) const {
  const auto row = neighbors(v);
  return NeighborList{v, {row.begin(), row.end()}};
}

Graph load_edge_list(const std::filesystem::path& path,
                     EdgeListSummary* summary) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }

  EdgeListSummary local;
  std::unordered_map<long long, NodeId> remap;
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto intern = [&remap](long long raw) {
    auto [it, inserted] =
        remap.emplace(raw, static_cast<NodeId>(remap.size()));
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const char* p = line.c_str();
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (*p == '\0' || *p == '#') continue;

    long long raw[2];
    for (int field = 0; field < 2; ++field) {
      char* end = nullptr;
      errno = 0;
      raw[field] = std::strtoll(p, &end, 10);
      if (end == p || errno != 0 || raw[field] < 0) {
        throw ParseError("malformed edge line", lineno);
      }
      p = end;
      while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    }
    if (*p != '\0') {
      throw ParseError("trailing text after edge", lineno);
    }

    const NodeId u = intern(raw[0]);
    const NodeId v = intern(raw[1]);
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (in.bad()) {
    throw std::runtime_error("read error on " + path.string());
  }

  std::sort(edges.begin(), edges.end());
  const auto uniq = std::unique(edges.begin(), edges.end());
  local.duplicate_edges_dropped =
      static_cast<std::size_t>(edges.end() - uniq);
  edges.erase(uniq, edges.end());

  if (summary != nullptr) *summary = local;
  return Graph::from_edges(remap.size(), std::move(edges));
}

void save_edge_list(const Graph& g, std::ostream& out) {
  const std::size_t n = g.node_count();
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (v > u) out << u << ' ' << v << '\n';
    }
  }
}

namespace {

// Maps a linear index over lower-triangular pairs back to (i, j), j < i.
std::pair<NodeId, NodeId> pair_from_linear(std::uint64_t idx) {
  auto i = static_cast<std::uint64_t>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
  while (i * (i - 1) / 2 > idx) --i;
  while ((i + 1) * i / 2 <= idx) ++i;
  return {static_cast<NodeId>(i), static_cast<NodeId>(idx - i * (i - 1) / 2)};
}

}  // namespace

Graph generate_er(std::size_t n, double alpha, std::uint64_t seed) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("edge probability must be in [0, 1]");
  }
  const std::uint64_t total = n < 2 ? 0 : n * (n - 1) / 2;
  std::vector<std::pair<NodeId, NodeId>> edges;
  RandomStream stream = RandomSource(seed).trial(0).stream(Role::kGraphGen, 0);

  if (alpha >= 1.0) {
    edges.reserve(total);
    for (NodeId i = 1; i < n; ++i) {
      for (NodeId j = 0; j < i; ++j) edges.emplace_back(i, j);
    }
  } else if (alpha > 0.0 && total > 0) {
    // Skip-ahead sampling: successive gaps between kept pairs are geometric,
    // so work scales with the number of edges rather than with C(n, 2).
    const double denom = std::log1p(-alpha);
    edges.reserve(static_cast<std::size_t>(alpha * static_cast<double>(total) * 1.1) + 16);
    std::uint64_t idx = 0;
    for (;;) {
      const double gap = std::floor(std::log(stream.uniform_positive()) / denom);
      if (gap >= static_cast<double>(total - idx)) break;
      idx += static_cast<std::uint64_t>(gap);
      if (idx >= total) break;
      edges.push_back(pair_from_linear(idx));
      ++idx;
      if (idx >= total) break;
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph sample_induced(const Graph& g, std::size_t n_sub, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n_sub > n) {
    throw std::invalid_argument("sample size exceeds node count");
  }
  RandomStream stream = RandomSource(seed).trial(0).stream(Role::kNodeSample, 0);

  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  for (std::size_t t = 0; t < n_sub; ++t) {
    const std::size_t j = t + stream.bounded(n - t);
    std::swap(ids[t], ids[j]);
  }
  ids.resize(n_sub);
  std::sort(ids.begin(), ids.end());

  std::vector<NodeId> rank(n, std::numeric_limits<NodeId>::max());
  for (std::size_t r = 0; r < n_sub; ++r) rank[ids[r]] = static_cast<NodeId>(r);

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t r = 0; r < n_sub; ++r) {
    for (NodeId v : g.neighbors(ids[r])) {
      if (v > ids[r] && rank[v] != std::numeric_limits<NodeId>::max()) {
        edges.emplace_back(static_cast<NodeId>(r), rank[v]);
      }
    }
  }
  return Graph::from_edges(n_sub, std::move(edges));
}

NeighborList project_with_order(const NeighborList& a, std::int64_t d_tilde,
                                std::span<const NodeId> order) {
  if (d_tilde < 0) throw std::invalid_argument("negative degree cap");
  if (static_cast<std::int64_t>(a.bits.size()) <= d_tilde) return a;

  NeighborList kept{a.owner, {}};
  kept.bits.reserve(static_cast<std::size_t>(d_tilde));
  for (NodeId v : order) {
    if (static_cast<std::int64_t>(kept.bits.size()) == d_tilde) break;
    if (a.contains(v)) kept.bits.push_back(v);
  }
  if (static_cast<std::int64_t>(kept.bits.size()) != d_tilde) {
    throw std::invalid_argument("order does not cover the neighbor list");
  }
  std::sort(kept.bits.begin(), kept.bits.end());
  return kept;
}

NeighborList project(const NeighborList& a, std::int64_t d_tilde,
                     std::size_t n, RandomStream& stream) {
  if (d_tilde < 0) throw std::invalid_argument("negative degree cap");
  if (static_cast<std::int64_t>(a.bits.size()) <= d_tilde) return a;

  // Partial Fisher-Yates; stop as soon as enough neighbors have surfaced.
  // Equivalent to walking a full random permutation of the n node ids.
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  NeighborList kept{a.owner, {}};
  kept.bits.reserve(static_cast<std::size_t>(d_tilde));
  for (std::size_t t = 0;
       t < n && static_cast<std::int64_t>(kept.bits.size()) < d_tilde; ++t) {
    const std::size_t j = t + stream.bounded(n - t);
    std::swap(ids[t], ids[j]);
    if (a.contains(ids[t])) kept.bits.push_back(ids[t]);
  }
  std::sort(kept.bits.begin(), kept.bits.end());
  return kept;
}

Int128 checked_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw std::invalid_argument("negative binomial argument");
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr Int128 kMax =
      static_cast<Int128>(~static_cast<unsigned __int128>(0) >> 1);

  Int128 result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // The running value is C(n-k+i, i). Cancelling gcd(n-k+i, i) first makes
    // the remaining divisor divide the running value exactly, so the product
    // never exceeds the step's coefficient and the overflow check is tight:
    // it fires only when the true result needs more than 127 bits.
    const std::int64_t shared = std::gcd(n - k + i, i);
    const Int128 factor = (n - k + i) / shared;
    result /= i / shared;
    if (result > kMax / factor) {
      throw std::overflow_error("binomial coefficient exceeds 128 bits");
    }
    result *= factor;
  }
  return result;
}

std::int64_t count_triangles(const Graph& g) {
  // Each triangle a < b < c is charged to edge (a, b) via the common
  // neighbor c > b, so it is counted exactly once.
  std::int64_t triangles = 0;
  const std::size_t n = g.node_count();
  for (NodeId u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    for (NodeId v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      auto it = std::lower_bound(nu.begin(), nu.end(), v + 1);
      auto jt = std::lower_bound(nv.begin(), nv.end(), v + 1);
      while (it != nu.end() && jt != nv.end()) {
        if (*it < *jt) {
          ++it;
        } else if (*jt < *it) {
          ++jt;
        } else {
          ++triangles;
          ++it;
          ++jt;
        }
      }
    }
  }
  return triangles;
}

Int128 count_kstars(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("star size must be at least 1");
  constexpr Int128 kMax =
      static_cast<Int128>(~static_cast<unsigned __int128>(0) >> 1);
  Int128 total = 0;
  const std::size_t n = g.node_count();
  for (NodeId v = 0; v < n; ++v) {
    const Int128 stars =
        checked_binomial(static_cast<std::int64_t>(g.degree(v)), k);
    if (total > kMax - stars) {
      throw std::overflow_error("k-star count exceeds 128 bits");
    }
    total += stars;
  }
  return total;
}

std::int64_t max_degree(const Graph& g) {
  std::int64_t best = 0;
  const std::size_t n = g.node_count();
  for (NodeId v = 0; v < n; ++v) {
    best = std::max(best, static_cast<std::int64_t>(g.degree(v)));
  }
  return best;
}

double clustering_coefficient(double triangles, double two_stars) {
  if (!(two_stars > 0.0)) return 0.0;
  const double ratio = 3.0 * triangles / two_stars;
  return std::clamp(ratio, 0.0, 1.0);
}

SubgraphClassCounts subgraph_classes_from_parts(std::size_t n,
                                                std::int64_t edges,
                                                std::int64_t triangles,
                                                Int128 sum_deg_choose2) {
  const auto as_i64 = [](Int128 v, const char* what) {
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error(what);
    }
    return static_cast<std::int64_t>(v);
  };

  // sum over nodes of C(d, 2) counts every 2-edge path once and every
  // triangle three times; an edge paired with any third node covers one-,
  // two- and three-edge triples once, twice and three times respectively.
  SubgraphClassCounts c;
  c.m3 = triangles;
  c.m2 = as_i64(sum_deg_choose2 - Int128{3} * triangles, "triple class m2");
  c.m1 = as_i64(Int128{edges} * (static_cast<Int128>(n) - 2) -
                    Int128{2} * c.m2 - Int128{3} * c.m3,
                "triple class m1");
  c.m0 = as_i64(checked_binomial(static_cast<std::int64_t>(n), 3) - c.m3 -
                    c.m2 - c.m1,
                "triple class m0");
  return c;
}

SubgraphClassCounts count_subgraph_classes(const Graph& g) {
  Int128 sum_deg_choose2 = 0;
  const std::size_t n = g.node_count();
  for (NodeId v = 0; v < n; ++v) {
    sum_deg_choose2 +=
        checked_binomial(static_cast<std::int64_t>(g.degree(v)), 2);
  }
  return subgraph_classes_from_parts(n, g.edge_count(), count_triangles(g),
                                     sum_deg_choose2);
}

}  // namespace ldpgraph
