#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dynmatch/common.hpp"
#include "dynmatch/graph_store.hpp"

namespace dynmatch {

/// Vertex-disjoint set of edges with a partner index.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::span<const Edge> edges);

  /// Adds (u, v). Throws InvalidParams if either endpoint is already matched
  /// or u == v.
  void add(Vertex u, Vertex v);
  /// Adds (u, v) when both endpoints are free; returns whether it did.
  bool try_add(Vertex u, Vertex v);
  /// Removes the edge if present; returns whether it was present.
  bool erase(Edge e);
  /// Keeps the first k edges in insertion order.
  void truncate(std::size_t k);

  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool is_matched(Vertex v) const { return partner_.contains(v); }
  std::optional<Vertex> partner(Vertex v) const;
  bool contains(Edge e) const;
  /// Vertices covered by the matching, two per edge, in edge order.
  std::vector<Vertex> vertices() const;

 private:
  void reindex();

  std::vector<Edge> edges_;  // normalized
  std::unordered_map<Vertex, Vertex> partner_;
};

/// Subset of {0..n-1}: sorted member list plus a membership mask.
class VertexSet {
 public:
  VertexSet() = default;
  /// Duplicates are dropped. Throws VertexOutOfRange.
  VertexSet(std::size_t universe, std::span<const Vertex> members);
  static VertexSet all(std::size_t universe);

  bool contains(Vertex v) const noexcept { return v < mask_.size() && mask_[v]; }
  std::span<const Vertex> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::size_t universe() const noexcept { return mask_.size(); }

 private:
  std::vector<Vertex> members_;
  std::vector<char> mask_;
};

/// Greedy maximal matching of g[U] scanning edges in ascending (u, slot)
/// order. O(n + m). If ops is given, the scanned adjacency entries are added.
Matching greedy_matching(const DynamicGraph& g, const VertexSet& U,
                         std::uint64_t* ops = nullptr);

/// Greedy maximal matching over an explicit edge list in list order.
Matching greedy_matching(std::span<const Edge> edges);

inline constexpr std::size_t kDefaultExactCap = 2000;

/// Maximum matching of g[U] in a general graph (Edmonds' blossom algorithm).
/// Throws SizeCapExceeded when |U| > cap.
Matching exact_max_matching(const DynamicGraph& g, const VertexSet& U,
                            std::size_t cap = kDefaultExactCap);

struct SizeEstimate {
  std::size_t value = 0;
  double epsilon = 0.0;
};

/// Contract: 1/2 * mu(g[U]) - eps * n <= value <= mu(g[U]).
class MatchingSizeEstimator {
 public:
  virtual ~MatchingSizeEstimator() = default;
  virtual SizeEstimate estimate(const DynamicGraph& g, const VertexSet& U, double eps,
                                std::uint64_t* ops = nullptr) const = 0;
};

/// Reports the greedy matching size, which satisfies the contract
/// deterministically since mu/2 <= |greedy| <= mu.
class GreedySizeEstimator final : public MatchingSizeEstimator {
 public:
  SizeEstimate estimate(const DynamicGraph& g, const VertexSet& U, double eps,
                        std::uint64_t* ops = nullptr) const override;
};

/// Default estimator. Throws InvalidParams unless eps is in (0, 1).
SizeEstimate estimate_matching_size(const DynamicGraph& g, const VertexSet& U, double eps);

/// Maximum degree of g[V(M)]; 0 for an empty matching, 1 iff M is induced.
std::size_t max_internal_degree(const DynamicGraph& g, const Matching& M,
                                std::uint64_t* ops = nullptr);

/// True iff M is contained in `edges` and no other edge of `edges` joins two
/// vertices of V(M).
bool is_induced_in(const Matching& M, std::span<const Edge> edges);

}  // namespace dynmatch
