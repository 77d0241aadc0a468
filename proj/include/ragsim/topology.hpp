// Copyright 2026 The ragsim Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ragsim/grid.hpp"

namespace ragsim {

/// Raised when a graph lacks a property an algorithm depends on
/// (strong connectivity, a relay path).
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directed communication graph. An edge src -> dst means dst receives from
/// src, so src is in dst's neighborhood (in-neighbors) and dst is one of
/// src's broadcast targets (out-neighbors).
class MeshGraph {
 public:
  MeshGraph() = default;
  explicit MeshGraph(int n) : in_(n), out_(n) {
    if (n < 0) throw std::invalid_argument("negative agent count");
  }

  int size() const { return static_cast<int>(in_.size()); }
  const std::vector<int>& in(int agent) const { return in_.at(agent); }
  const std::vector<int>& out(int agent) const { return out_.at(agent); }

  void add_edge(int src, int dst) {
    check(src);
    check(dst);
    if (src == dst) throw std::invalid_argument("self-loop on agent " + std::to_string(src));
    insert_sorted(in_[dst], src);
    insert_sorted(out_[src], dst);
  }

  void add_undirected(int a, int b) {
    add_edge(a, b);
    add_edge(b, a);
  }

  bool has_edge(int src, int dst) const {
    const auto& v = in_.at(dst);
    return std::binary_search(v.begin(), v.end(), src);
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& v : in_) n += v.size();
    return n;
  }

  /// Unordered pairs joined in at least one direction.
  std::size_t undirected_edge_count() const {
    std::size_t n = 0;
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (has_edge(a, b) || has_edge(b, a)) ++n;
    return n;
  }

  bool is_complete() const {
    for (const auto& v : in_)
      if (static_cast<int>(v.size()) != size() - 1) return false;
    return true;
  }

  bool is_symmetric() const {
    for (int a = 0; a < size(); ++a)
      for (int b : out_[a])
        if (!has_edge(b, a)) return false;
    return true;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (int src = 0; src < size(); ++src)
      for (int dst : out_[src]) e.emplace_back(src, dst);
    return e;
  }

 private:
  void check(int agent) const {
    if (agent < 0 || agent >= size())
      throw std::out_of_range("agent " + std::to_string(agent) + " outside graph of size " +
                              std::to_string(size()));
  }
  static void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }

  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
};

/// Decision order plus, for each position, the earlier agents whose actions
/// are visible to the agent at that position.
struct InfoDag {
  std::vector<int> order;
  std::vector<std::vector<int>> access;  // access[k] for agent order[k]

  void validate() const {
    const int n = static_cast<int>(order.size());
    if (static_cast<int>(access.size()) != n) throw std::invalid_argument("InfoDag: access size mismatch");
    std::vector<int> position(n, -1);
    for (int k = 0; k < n; ++k) {
      if (order[k] < 0 || order[k] >= n || position[order[k]] != -1)
        throw std::invalid_argument("InfoDag: order is not a permutation");
      position[order[k]] = k;
    }
    for (int k = 0; k < n; ++k)
      for (int j : access[k])
        if (j < 0 || j >= n || position[j] >= k)
          throw std::invalid_argument("InfoDag: access set references a later agent");
  }

  /// Every agent sees all of its predecessors.
  static InfoDag full(std::vector<int> order) {
    InfoDag d;
    d.access.resize(order.size());
    for (std::size_t k = 1; k < order.size(); ++k)
      d.access[k].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    d.order = std::move(order);
    return d;
  }
};

inline MeshGraph empty_graph(int n) { return MeshGraph(n); }

inline MeshGraph complete_graph(int n) {
  MeshGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) g.add_edge(a, b);
  return g;
}

/// Each agent receives from up to k nearest others within `comm_range`
/// (distance ties to the lower agent id).
inline MeshGraph knn_graph(const std::vector<Point>& positions, int k, double comm_range) {
  if (k < 0) throw std::invalid_argument("knn_graph: k must be non-negative");
  const int n = static_cast<int>(positions.size());
  MeshGraph g(n);
  std::vector<std::pair<double, int>> cand;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(positions[i].x) || !std::isfinite(positions[i].y))
      throw std::invalid_argument("knn_graph: non-finite position");
    cand.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = std::hypot(positions[i].x - positions[j].x, positions[i].y - positions[j].y);
      if (d <= comm_range) cand.emplace_back(d, j);
    }
    std::sort(cand.begin(), cand.end());
    for (int t = 0; t < std::min<int>(k, static_cast<int>(cand.size())); ++t) g.add_edge(cand[t].second, i);
  }
  return g;
}

/// Undirected path visiting agents in `order`.
inline MeshGraph line_graph(const std::vector<int>& order) {
  MeshGraph g(static_cast<int>(order.size()));
  for (std::size_t k = 1; k < order.size(); ++k) g.add_undirected(order[k - 1], order[k]);
  return g;
}

inline MeshGraph line_graph(int n) {
  if (n < 1) throw std::invalid_argument("line_graph: n must be >= 1");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return line_graph(order);
}

inline MeshGraph star_graph(int n, int center) {
  if (n < 1 || center < 0 || center >= n) throw std::invalid_argument("star_graph: bad center");
  MeshGraph g(n);
  for (int a = 0; a < n; ++a)
    if (a != center) g.add_undirected(center, a);
  return g;
}

/// Undirected path over `order` plus `extra_edges` distinct random undirected
/// edges not already present.
inline MeshGraph strongly_connected_line_plus(const std::vector<int>& order, int extra_edges,
                                              std::uint64_t seed) {
  const long long n = static_cast<long long>(order.size());
  const long long room = n * (n - 1) / 2 - std::max(0LL, n - 1);
  if (extra_edges < 0 || extra_edges > room)
    throw std::domain_error("strongly_connected_line_plus: cannot add " +
                            std::to_string(extra_edges) + " edges to a line of " +
                            std::to_string(n) + " agents");
  MeshGraph g = line_graph(order);
  std::vector<std::pair<int, int>> free;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!g.has_edge(a, b)) free.emplace_back(a, b);
  std::mt19937_64 rng(seed);
  std::shuffle(free.begin(), free.end(), rng);
  for (int e = 0; e < extra_edges; ++e) g.add_undirected(free[e].first, free[e].second);
  return g;
}

inline MeshGraph strongly_connected_line_plus(int n, int extra_edges, std::uint64_t seed) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return strongly_connected_line_plus(order, extra_edges, seed);
}

/// Directed cycle 0 -> n-1 -> n-2 -> ... -> 1 -> 0, running against the
/// decision order 0, 1, ..., n-1: each handoff i -> i+1 must travel all the
/// way around, relayed by every other agent.
inline MeshGraph worst_case_cycle(int n) {
  if (n < 3) throw std::domain_error("worst_case_cycle: n must be >= 3");
  MeshGraph g(n);
  g.add_edge(0, n - 1);
  for (int i = 1; i < n; ++i) g.add_edge(i, i - 1);
  return g;
}

/// Each ordered pair gets an edge with probability p.
inline MeshGraph random_digraph(int n, double p, std::uint64_t seed) {
  MeshGraph g(n);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && coin(rng)) g.add_edge(a, b);
  return g;
}

/// Directed BFS hop count; nullopt when `to` is unreachable.
inline std::optional<int> shortest_hops(const MeshGraph& g, int from, int to) {
  if (from == to) return 0;
  std::vector<int> dist(g.size(), -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.out(u)) {
      if (dist[v] != -1) continue;
      dist[v] = dist[u] + 1;
      if (v == to) return dist[v];
      q.push(v);
    }
  }
  return std::nullopt;
}

inline bool is_strongly_connected(const MeshGraph& g) {
  if (g.size() <= 1) return true;
  auto reach = [&](bool forward) {
    std::vector<char> seen(g.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : forward ? g.out(u) : g.in(u))
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    return count;
  };
  return reach(true) == g.size() && reach(false) == g.size();
}

/// Depth-first preorder along out-edges from `start`, neighbors explored in
/// ascending id. Every agent sees all of its predecessors.
inline InfoDag dfs_order(const MeshGraph& g, int start) {
  if (start < 0 || start >= g.size()) throw std::out_of_range("dfs_order: bad start agent");
  if (!is_strongly_connected(g)) throw TopologyError("dfs_order: graph is not strongly connected");
  std::vector<int> order;
  std::vector<char> seen(g.size(), 0);
  // Explicit stack of (agent, next out-neighbor index) to keep preorder exact.
  std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
  seen[start] = 1;
  order.push_back(start);
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto& nbrs = g.out(u);
    while (next < nbrs.size() && seen[nbrs[next]]) ++next;
    if (next == nbrs.size()) {
      stack.pop_back();
      continue;
    }
    int v = nbrs[next++];
    seen[v] = 1;
    order.push_back(v);
    stack.emplace_back(v, 0);
  }
  return InfoDag::full(std::move(order));
}

/// Edge-list text: first line `n`, then one `src dst` directed edge per line.
inline void write_edge_list(std::ostream& out, const MeshGraph& g) {
  out << g.size() << '\n';
  for (auto [src, dst] : g.edges()) out << src << ' ' << dst << '\n';
}

inline MeshGraph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw std::runtime_error("edge list: missing agent count");
  int n = -1;
  {
    std::istringstream ss(line);
    std::string rest;
    if (!(ss >> n) || n < 0 || (ss >> rest))
      throw std::runtime_error("edge list line " + std::to_string(line_no) + ": bad agent count");
  }
  MeshGraph g(n);
  while (next_line()) {
    std::istringstream ss(line);
    int src = -1, dst = -1;
    std::string rest;
    if (!(ss >> src >> dst) || (ss >> rest))
      throw std::runtime_error("edge list line " + std::to_string(line_no) + ": expected `src dst`");
    try {
      g.add_edge(src, dst);
    } catch (const std::exception& e) {
      throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return g;
}

}  // namespace ragsim
