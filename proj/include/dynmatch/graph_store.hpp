#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dynmatch/common.hpp"

namespace dynmatch {

/**
   Undirected simple graph on a fixed vertex set {0, ..., n-1}.

   Each vertex keeps a dynamic array of neighbors (the first deg(u) slots are
   live) and a hash map from neighbor id to slot. Insertion appends, deletion
   moves the last neighbor into the vacated slot. Arrays double when full and
   halve when at most a quarter full, so the physical length of every array
   stays within 4 * max(deg(u), 1).

   Single writer. Read-only access may be shared.
 */
class DynamicGraph {
 public:
  explicit DynamicGraph(std::size_t n = 0);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::size_t degree(Vertex u) const;
  /// False for u == v. Throws VertexOutOfRange.
  bool has_edge(Vertex u, Vertex v) const;

  /// Expected O(1). Throws SelfLoop, DuplicateEdge or VertexOutOfRange.
  void insert_edge(Vertex u, Vertex v);
  /// Expected O(1). Throws MissingEdge or VertexOutOfRange.
  void delete_edge(Vertex u, Vertex v);

  /// The neighbor stored in slot i of u, with 1 <= i <= deg(u).
  Vertex neighbor_at(Vertex u, std::size_t i) const;

  /// Live slots of u, in slot order.
  std::span<const Vertex> neighbors(Vertex u) const;

  /// Uniform over the current neighbors of u. Throws IsolatedVertex.
  Vertex sample_neighbor(Vertex u, Rng& rng) const;

  /// Physical length of u's neighbor array.
  std::size_t capacity(Vertex u) const;

  /// Visits every edge once as (u, v) with u < v, in ascending (u, slot) order.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (Vertex u = 0; u < adjacency_.size(); ++u) {
      const auto& a = adjacency_[u];
      for (std::size_t s = 0; s < a.degree; ++s) {
        if (u < a.slots[s]) f(u, a.slots[s]);
      }
    }
  }

  /// All edges with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Removes every edge; the vertex count is unchanged.
  void clear();

  /// Elementary steps performed by mutations so far (slot writes, map
  /// operations and element copies during resizes).
  std::uint64_t step_count() const noexcept { return steps_; }

 private:
  struct Adjacency {
    std::vector<Vertex> slots;  // size() is the physical capacity
    std::size_t degree = 0;
    std::unordered_map<Vertex, std::uint32_t> slot_of;
  };

  void check_vertex(Vertex u) const;
  void append(Vertex u, Vertex v);
  void remove(Vertex u, Vertex v);
  void resize_slots(Adjacency& a, std::size_t new_capacity);

  std::vector<Adjacency> adjacency_;
  std::size_t edge_count_ = 0;
  std::uint64_t steps_ = 0;
};

}  // namespace dynmatch
