#include "dynmatch/graph_store.hpp"

#include <algorithm>
#include <string>

namespace dynmatch {

DynamicGraph::DynamicGraph(std::size_t n) : adjacency_(n) {}

void DynamicGraph::check_vertex(Vertex u) const {
  if (u >= adjacency_.size()) {
    throw Error(Errc::VertexOutOfRange,
                "vertex " + std::to_string(u) + " with n=" +
                    std::to_string(adjacency_.size()));
  }
}

std::size_t DynamicGraph::degree(Vertex u) const {
  check_vertex(u);
  return adjacency_[u].degree;
}

bool DynamicGraph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  // Probe the smaller side.
  const auto& a = adjacency_[u];
  const auto& b = adjacency_[v];
  return a.degree <= b.degree ? a.slot_of.contains(v) : b.slot_of.contains(u);
}

void DynamicGraph::resize_slots(Adjacency& a, std::size_t new_capacity) {
  // A fresh vector gets exactly new_capacity elements, which keeps the
  // physical length under our control rather than the allocator's.
  std::vector<Vertex> fresh(new_capacity);
  for (std::size_t s = 0; s < a.degree; ++s) fresh[s] = a.slots[s];
  a.slots.swap(fresh);
  steps_ += a.degree + 1;
}

void DynamicGraph::append(Vertex u, Vertex v) {
  auto& a = adjacency_[u];
  if (a.degree == a.slots.size()) {
    resize_slots(a, a.slots.empty() ? 1 : 2 * a.slots.size());
  }
  a.slots[a.degree] = v;
  a.slot_of.emplace(v, static_cast<std::uint32_t>(a.degree));
  ++a.degree;
  steps_ += 2;
}

void DynamicGraph::remove(Vertex u, Vertex v) {
  auto& a = adjacency_[u];
  const auto it = a.slot_of.find(v);
  const std::uint32_t j = it->second;
  a.slot_of.erase(it);
  const std::size_t last = a.degree - 1;
  if (j != last) {
    const Vertex w = a.slots[last];
    a.slots[j] = w;
    a.slot_of[w] = j;
    steps_ += 2;
  }
  --a.degree;
  steps_ += 2;
  if (!a.slots.empty() && a.degree <= a.slots.size() / 4) {
    resize_slots(a, a.slots.size() / 2);
  }
}

void DynamicGraph::insert_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    throw Error(Errc::SelfLoop, "self-loop at " + std::to_string(u));
  }
  if (has_edge(u, v)) {
    throw Error(Errc::DuplicateEdge, "edge (" + std::to_string(u) + "," +
                                         std::to_string(v) + ") already present");
  }
  append(u, v);
  append(v, u);
  ++edge_count_;
}

void DynamicGraph::delete_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v || !has_edge(u, v)) {
    throw Error(Errc::MissingEdge, "edge (" + std::to_string(u) + "," +
                                       std::to_string(v) + ") not present");
  }
  remove(u, v);
  remove(v, u);
  --edge_count_;
}

Vertex DynamicGraph::neighbor_at(Vertex u, std::size_t i) const {
  check_vertex(u);
  const auto& a = adjacency_[u];
  if (i < 1 || i > a.degree) {
    throw Error(Errc::IndexOutOfRange, "slot " + std::to_string(i) +
                                           " with deg=" + std::to_string(a.degree));
  }
  return a.slots[i - 1];
}

std::span<const Vertex> DynamicGraph::neighbors(Vertex u) const {
  check_vertex(u);
  const auto& a = adjacency_[u];
  return {a.slots.data(), a.degree};
}

Vertex DynamicGraph::sample_neighbor(Vertex u, Rng& rng) const {
  check_vertex(u);
  const auto& a = adjacency_[u];
  if (a.degree == 0) {
    throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(u) + " has no neighbors");
  }
  std::uniform_int_distribution<std::size_t> pick(0, a.degree - 1);
  return a.slots[pick(rng)];
}

std::size_t DynamicGraph::capacity(Vertex u) const {
  check_vertex(u);
  return adjacency_[u].slots.size();
}

std::vector<Edge> DynamicGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for_each_edge([&](Vertex u, Vertex v) { out.push_back({u, v}); });
  std::sort(out.begin(), out.end());
  return out;
}

void DynamicGraph::clear() {
  for (auto& a : adjacency_) a = Adjacency{};
  edge_count_ = 0;
}

}  // namespace dynmatch
