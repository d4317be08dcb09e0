#include "dynmatch/matching.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

namespace dynmatch {

// ---------------------------------------------------------------------------
// Matching

Matching::Matching(std::span<const Edge> edges) {
  for (const Edge& e : edges) add(e.u, e.v);
}

void Matching::add(Vertex u, Vertex v) {
  if (!try_add(u, v)) {
    throw Error(Errc::InvalidParams, "edge (" + std::to_string(u) + "," +
                                         std::to_string(v) +
                                         ") conflicts with the matching");
  }
}

bool Matching::try_add(Vertex u, Vertex v) {
  if (u == v || partner_.contains(u) || partner_.contains(v)) return false;
  edges_.push_back(Edge{u, v}.normalized());
  partner_.emplace(u, v);
  partner_.emplace(v, u);
  return true;
}

bool Matching::erase(Edge e) {
  const Edge n = e.normalized();
  if (!contains(n)) return false;
  partner_.erase(n.u);
  partner_.erase(n.v);
  edges_.erase(std::find(edges_.begin(), edges_.end(), n));
  return true;
}

void Matching::truncate(std::size_t k) {
  if (k >= edges_.size()) return;
  edges_.resize(k);
  reindex();
}

void Matching::reindex() {
  partner_.clear();
  for (const Edge& e : edges_) {
    partner_.emplace(e.u, e.v);
    partner_.emplace(e.v, e.u);
  }
}

std::optional<Vertex> Matching::partner(Vertex v) const {
  const auto it = partner_.find(v);
  if (it == partner_.end()) return std::nullopt;
  return it->second;
}

bool Matching::contains(Edge e) const {
  const auto it = partner_.find(e.u);
  return it != partner_.end() && it->second == e.v && e.u != e.v;
}

std::vector<Vertex> Matching::vertices() const {
  std::vector<Vertex> out;
  out.reserve(2 * edges_.size());
  for (const Edge& e : edges_) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// VertexSet

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members)
    : mask_(universe, 0) {
  members_.reserve(members.size());
  for (Vertex v : members) {
    if (v >= universe) {
      throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v) +
                                              " outside universe of size " +
                                              std::to_string(universe));
    }
    if (!mask_[v]) {
      mask_[v] = 1;
      members_.push_back(v);
    }
  }
  std::sort(members_.begin(), members_.end());
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s;
  s.mask_.assign(universe, 1);
  s.members_.resize(universe);
  for (std::size_t i = 0; i < universe; ++i) s.members_[i] = static_cast<Vertex>(i);
  return s;
}

// ---------------------------------------------------------------------------
// Greedy

Matching greedy_matching(const DynamicGraph& g, const VertexSet& U, std::uint64_t* ops) {
  Matching M;
  std::vector<char> matched(g.vertex_count(), 0);
  std::uint64_t steps = g.vertex_count();
  for (Vertex u : U.members()) {
    if (u >= g.vertex_count()) break;
    for (Vertex v : g.neighbors(u)) {
      ++steps;
      if (matched[u]) break;
      if (u < v && !matched[v] && U.contains(v)) {
        M.add(u, v);
        matched[u] = matched[v] = 1;
      }
    }
  }
  if (ops) *ops += steps;
  return M;
}

Matching greedy_matching(std::span<const Edge> edges) {
  Matching M;
  for (const Edge& e : edges) M.try_add(e.u, e.v);
  return M;
}

// ---------------------------------------------------------------------------
// Exact maximum matching: Edmonds' blossom algorithm on g[U], seeded with the
// greedy matching.

namespace {

class Blossom {
 public:
  explicit Blossom(std::vector<std::vector<int>> adj)
      : adj_(std::move(adj)),
        n_(static_cast<int>(adj_.size())),
        match_(n_, -1),
        parent_(n_),
        base_(n_),
        used_(n_),
        in_blossom_(n_),
        lca_mark_(n_) {}

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      for (int w : adj_[v]) {
        if (match_[w] == -1) {
          match_[v] = w;
          match_[w] = v;
          break;
        }
      }
    }
    for (int root = 0; root < n_; ++root) {
      if (match_[root] != -1) continue;
      int v = find_path(root);
      while (v != -1) {
        const int pv = parent_[v];
        const int ppv = match_[pv];
        match_[v] = pv;
        match_[pv] = v;
        v = ppv;
      }
    }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::fill(lca_mark_.begin(), lca_mark_.end(), 0);
    while (true) {
      a = base_[a];
      lca_mark_[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (lca_mark_[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          const int cur = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = 1;
          queue.push_back(match_[to]);
        }
      }
    }
    return -1;
  }

  std::vector<std::vector<int>> adj_;
  int n_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_, in_blossom_, lca_mark_;
};

}  // namespace

Matching exact_max_matching(const DynamicGraph& g, const VertexSet& U, std::size_t cap) {
  if (U.size() > cap) {
    throw Error(Errc::SizeCapExceeded, "|U|=" + std::to_string(U.size()) +
                                           " exceeds cap " + std::to_string(cap));
  }
  const auto members = U.members();
  std::unordered_map<Vertex, int> local;
  local.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) local.emplace(members[i], static_cast<int>(i));

  std::vector<std::vector<int>> adj(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= g.vertex_count()) continue;
    for (Vertex w : g.neighbors(members[i])) {
      const auto it = local.find(w);
      if (it != local.end()) adj[i].push_back(it->second);
    }
  }
  const std::vector<int> mate = Blossom(std::move(adj)).solve();
  Matching M;
  for (std::size_t i = 0; i < mate.size(); ++i) {
    if (mate[i] > static_cast<int>(i)) M.add(members[i], members[mate[i]]);
  }
  return M;
}

// ---------------------------------------------------------------------------
// Estimation and internal degree

SizeEstimate GreedySizeEstimator::estimate(const DynamicGraph& g, const VertexSet& U,
                                           double eps, std::uint64_t* ops) const {
  return {greedy_matching(g, U, ops).size(), eps};
}

SizeEstimate estimate_matching_size(const DynamicGraph& g, const VertexSet& U, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(Errc::InvalidParams, "estimator eps must lie in (0,1)");
  }
  return GreedySizeEstimator{}.estimate(g, U, eps);
}

std::size_t max_internal_degree(const DynamicGraph& g, const Matching& M, std::uint64_t* ops) {
  if (M.empty()) return 0;
  const std::vector<Vertex> verts = M.vertices();
  std::unordered_set<Vertex> in_m(verts.begin(), verts.end());
  std::size_t best = 0;
  std::uint64_t steps = 0;
  for (Vertex v : verts) {
    std::size_t d = 0;
    for (Vertex w : g.neighbors(v)) {
      ++steps;
      if (in_m.contains(w)) ++d;
    }
    best = std::max(best, d);
  }
  if (ops) *ops += steps;
  return best;
}

bool is_induced_in(const Matching& M, std::span<const Edge> edges) {
  std::unordered_set<Edge, EdgeHash> seen;
  for (const Edge& e : edges) {
    if (!M.is_matched(e.u) || !M.is_matched(e.v)) continue;
    const Edge n = e.normalized();
    if (!M.contains(n)) return false;
    seen.insert(n);
  }
  return seen.size() == M.size();
}

}  // namespace dynmatch
