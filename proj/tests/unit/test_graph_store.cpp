#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "dynmatch/graph_store.hpp"
#include "oracles.hpp"

using dynmatch::DynamicGraph;
using dynmatch::Edge;
using dynmatch::Errc;
using dynmatch::Error;
using dynmatch::Vertex;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::InvalidParams;
}

void expect_same(const DynamicGraph& g, const oracle::NaiveGraph& ref) {
  ASSERT_EQ(g.edge_count(), ref.edge_count());
  EXPECT_EQ(g.edges(), ref.edges());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    ASSERT_EQ(g.degree(u), ref.neighbors(u).size());
    std::vector<Vertex> slots;
    for (std::size_t i = 1; i <= g.degree(u); ++i) slots.push_back(g.neighbor_at(u, i));
    std::sort(slots.begin(), slots.end());
    EXPECT_TRUE(std::equal(slots.begin(), slots.end(), ref.neighbors(u).begin(),
                           ref.neighbors(u).end()));
    EXPECT_LE(g.capacity(u), 4 * std::max<std::size_t>(g.degree(u), 1));
  }
}

}  // namespace

TEST(GraphStore, SingleInsert) {
  DynamicGraph g(3);
  g.insert_edge(0, 1);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(GraphStore, InsertErrors) {
  DynamicGraph g(3);
  g.insert_edge(0, 1);
  EXPECT_EQ(code_of([&] { g.insert_edge(0, 1); }), Errc::DuplicateEdge);
  EXPECT_EQ(code_of([&] { g.insert_edge(1, 0); }), Errc::DuplicateEdge);
  EXPECT_EQ(code_of([&] { g.insert_edge(2, 2); }), Errc::SelfLoop);
  EXPECT_EQ(code_of([&] { g.insert_edge(0, 3); }), Errc::VertexOutOfRange);
  EXPECT_EQ(code_of([&] { g.delete_edge(0, 2); }), Errc::MissingEdge);
  EXPECT_EQ(code_of([&] { g.delete_edge(0, 7); }), Errc::VertexOutOfRange);
}

TEST(GraphStore, DeleteRestoresEmpty) {
  DynamicGraph g(2);
  g.insert_edge(0, 1);
  g.delete_edge(0, 1);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.degree(0), 0u);
  EXPECT_FALSE(g.has_edge(0, 1));
}

TEST(GraphStore, SwapDeleteOnStar) {
  DynamicGraph g(5);
  for (Vertex v = 1; v <= 4; ++v) g.insert_edge(0, v);
  g.delete_edge(0, 2);
  std::vector<Vertex> nb(g.neighbors(0).begin(), g.neighbors(0).end());
  std::sort(nb.begin(), nb.end());
  EXPECT_EQ(nb, (std::vector<Vertex>{1, 3, 4}));
  for (std::size_t i = 1; i <= g.degree(0); ++i) EXPECT_EQ(g.neighbor_at(0, i), g.neighbors(0)[i - 1]);
  for (Vertex v : {1u, 3u, 4u}) EXPECT_TRUE(g.has_edge(v, 0));
}

TEST(GraphStore, NeighborAtInsertionOrder) {
  DynamicGraph g(3);
  g.insert_edge(0, 1);
  g.insert_edge(0, 2);
  EXPECT_EQ(g.neighbor_at(0, 1), 1u);
  EXPECT_EQ(g.neighbor_at(0, 2), 2u);
  EXPECT_EQ(code_of([&] { g.neighbor_at(1, 2); }), Errc::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { g.neighbor_at(0, 0); }), Errc::IndexOutOfRange);
  DynamicGraph h(2);
  EXPECT_EQ(code_of([&] { h.neighbor_at(0, 1); }), Errc::IndexOutOfRange);
}

TEST(GraphStore, TriangleAndSelfQueries) {
  DynamicGraph g(3);
  g.insert_edge(0, 1);
  g.insert_edge(1, 2);
  g.insert_edge(2, 0);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
  for (Vertex v = 0; v < 3; ++v) EXPECT_FALSE(g.has_edge(v, v));
  EXPECT_EQ(code_of([&] { g.has_edge(0, 9); }), Errc::VertexOutOfRange);
}

TEST(GraphStore, RandomInsertsMatchOracle) {
  std::mt19937_64 rng(11);
  const std::size_t n = 300;
  DynamicGraph g(n);
  oracle::NaiveGraph ref(n);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  for (int i = 0; i < 10000; ++i) {
    const Vertex u = pick(rng);
    const Vertex v = pick(rng);
    if (u == v || ref.has(u, v)) continue;
    g.insert_edge(u, v);
    ref.insert(u, v);
  }
  expect_same(g, ref);
}

TEST(GraphStore, InterleavedUpdatesMatchOracleAtEveryStep) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 30;
    DynamicGraph g(n);
    oracle::NaiveGraph ref(n);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    for (int step = 0; step < 2000; ++step) {
      const Vertex u = pick(rng);
      const Vertex v = pick(rng);
      if (u == v) continue;
      if (ref.has(u, v)) {
        g.delete_edge(u, v);
        ref.erase(u, v);
      } else {
        g.insert_edge(u, v);
        ref.insert(u, v);
      }
      ASSERT_EQ(g.has_edge(u, v), ref.has(u, v));
      if (step % 50 == 0) expect_same(g, ref);
    }
    expect_same(g, ref);
  }
}

TEST(GraphStore, CapacityShrinksAfterMassDeletion) {
  DynamicGraph g(200);
  for (Vertex v = 1; v < 200; ++v) g.insert_edge(0, v);
  for (Vertex v = 1; v < 200; ++v) {
    g.delete_edge(0, v);
    EXPECT_LE(g.capacity(0), 4 * std::max<std::size_t>(g.degree(0), 1));
  }
}

TEST(GraphStore, SampleSingleNeighbor) {
  DynamicGraph g(3);
  g.insert_edge(0, 2);
  dynmatch::Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(g.sample_neighbor(0, rng), 2u);
  EXPECT_EQ(code_of([&] { g.sample_neighbor(1, rng); }), Errc::IsolatedVertex);
}

TEST(GraphStore, SampleNeighborIsUniform) {
  DynamicGraph g(5);
  for (Vertex v = 1; v <= 4; ++v) g.insert_edge(0, v);
  dynmatch::Rng rng(5);
  const int trials = 100000;
  std::map<Vertex, int> counts;
  for (int i = 0; i < trials; ++i) ++counts[g.sample_neighbor(0, rng)];
  const double expect = trials / 4.0;
  const double sigma = std::sqrt(trials * 0.25 * 0.75);
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [v, c] : counts) EXPECT_NEAR(c, expect, 3 * sigma) << v;
}

TEST(GraphStore, DeletedNeighborNeverSampled) {
  DynamicGraph g(4);
  for (Vertex v = 1; v <= 3; ++v) g.insert_edge(0, v);
  g.delete_edge(0, 2);
  dynmatch::Rng rng(9);
  for (int i = 0; i < 1000; ++i) EXPECT_NE(g.sample_neighbor(0, rng), 2u);
}

TEST(GraphStore, EdgeStreamIsSortedAndComplete) {
  std::mt19937_64 rng(2);
  const auto edges = oracle::random_edges(40, 0.2, rng);
  DynamicGraph g = oracle::make_graph(40, edges);
  std::vector<Edge> streamed;
  g.for_each_edge([&](Vertex u, Vertex v) { streamed.push_back({u, v}); });
  std::sort(streamed.begin(), streamed.end());
  EXPECT_EQ(streamed, edges);
  EXPECT_EQ(g.edges(), edges);
}

TEST(GraphStore, CopyIsIndependent) {
  DynamicGraph g(3);
  g.insert_edge(0, 1);
  DynamicGraph h = g;
  h.insert_edge(1, 2);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(h.edge_count(), 2u);
}
