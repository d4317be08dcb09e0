#pragma once

// Independent reference implementations used by the tests. None of them
// calls into the library code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "dynmatch/common.hpp"
#include "dynmatch/graph_store.hpp"
#include "dynmatch/matching.hpp"

namespace oracle {

using dynmatch::Edge;
using dynmatch::Vertex;

/// Adjacency sets; the naive reference for the graph store.
class NaiveGraph {
 public:
  explicit NaiveGraph(std::size_t n) : adj_(n) {}

  bool has(Vertex u, Vertex v) const { return u < adj_.size() && adj_[u].contains(v); }
  void insert(Vertex u, Vertex v) {
    adj_[u].insert(v);
    adj_[v].insert(u);
  }
  void erase(Vertex u, Vertex v) {
    adj_[u].erase(v);
    adj_[v].erase(u);
  }
  const std::set<Vertex>& neighbors(Vertex u) const { return adj_[u]; }
  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& s : adj_) total += s.size();
    return total / 2;
  }
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

 private:
  std::vector<std::set<Vertex>> adj_;
};

/// Maximum matching size by memoized search over vertex bitmasks. n <= 20.
inline std::size_t brute_force_mu(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::uint32_t> nbr(n, 0);
  for (const Edge& e : edges) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  std::unordered_map<std::uint32_t, std::size_t> memo;
  auto solve = [&](auto&& self, std::uint32_t free) -> std::size_t {
    if (free == 0) return 0;
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    const int v = __builtin_ctz(free);
    const std::uint32_t rest = free & ~(1u << v);
    std::size_t best = self(self, rest);
    for (std::uint32_t cand = nbr[v] & rest; cand != 0; cand &= cand - 1) {
      const int w = __builtin_ctz(cand);
      best = std::max(best, 1 + self(self, rest & ~(1u << w)));
    }
    memo.emplace(free, best);
    return best;
  };
  const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
  return solve(solve, all);
}

inline std::vector<Edge> random_edges(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> out;
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) out.push_back({u, v});
    }
  }
  return out;
}

inline dynmatch::DynamicGraph make_graph(std::size_t n, const std::vector<Edge>& edges) {
  dynmatch::DynamicGraph g(n);
  for (const Edge& e : edges) g.insert_edge(e.u, e.v);
  return g;
}

/// True iff every edge exists, lies inside U and no vertex repeats.
inline bool is_matching_of(const std::set<Edge>& graph, const std::vector<Vertex>& U,
                           const std::vector<Edge>& M) {
  const std::set<Vertex> inside(U.begin(), U.end());
  std::set<Vertex> seen;
  for (const Edge& e : M) {
    if (!graph.contains(e.normalized())) return false;
    if (!inside.contains(e.u) || !inside.contains(e.v)) return false;
    if (!seen.insert(e.u).second || !seen.insert(e.v).second) return false;
  }
  return true;
}

/// Maximum degree of the subgraph induced on V(M), by scanning all edges.
inline std::size_t internal_degree(const std::vector<Edge>& graph, const std::vector<Edge>& M) {
  std::set<Vertex> inside;
  for (const Edge& e : M) {
    inside.insert(e.u);
    inside.insert(e.v);
  }
  std::map<Vertex, std::size_t> deg;
  for (const Edge& e : graph) {
    if (inside.contains(e.u) && inside.contains(e.v)) {
      ++deg[e.u];
      ++deg[e.v];
    }
  }
  std::size_t best = 0;
  for (const auto& [v, d] : deg) best = std::max(best, d);
  return best;
}

/// Definition check of an ordered induced-matching family: common size r,
/// vertex-disjoint matchings, edge-disjoint family, and no edge of any later
/// matching joins two vertices of an earlier one unless it belongs to it.
inline bool is_ors(std::size_t n, std::size_t r, const std::vector<std::vector<Edge>>& ms) {
  std::set<Edge> all;
  for (const auto& M : ms) {
    if (M.size() != r) return false;
    std::set<Vertex> seen;
    for (const Edge& e : M) {
      if (e.u >= n || e.v >= n || e.u == e.v) return false;
      if (!seen.insert(e.u).second || !seen.insert(e.v).second) return false;
      if (!all.insert(e.normalized()).second) return false;
    }
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::set<Vertex> inside;
    std::set<Edge> own;
    for (const Edge& e : ms[i]) {
      inside.insert(e.u);
      inside.insert(e.v);
      own.insert(e.normalized());
    }
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      for (const Edge& e : ms[j]) {
        if (inside.contains(e.u) && inside.contains(e.v) && !own.contains(e.normalized())) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace oracle
