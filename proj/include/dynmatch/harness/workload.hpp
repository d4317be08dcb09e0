#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dynmatch/engine.hpp"
#include "dynmatch/graph_store.hpp"
#include "dynmatch/harness/trace.hpp"
#include "dynmatch/matching.hpp"

namespace dynmatch::harness {

enum class WorkloadKind { UniformRandom, SlidingWindow, MatchedEdgeDeleter, OrsStress };

std::string_view kind_name(WorkloadKind kind) noexcept;
/// Throws InvalidKind.
WorkloadKind parse_kind(std::string_view name);
std::vector<WorkloadKind> all_kinds();

/// Engine parameters used by generated traces: gamma = 1/(12^k + 1),
/// delta = 0.2, alpha = 0.05, q = 2, m = 4n (capped at n(n-1)/2), beta = 1.
ProblemParams default_workload_params(std::size_t n, std::size_t k = 1);

struct WorkloadOptions {
  ProblemParams params;
  /// Edge count the random kinds hover around, as a multiple of n.
  double density = 3.0;
  /// Inclusion probability of each vertex in a query's candidate set.
  double query_keep = 0.8;
  /// Queries attempted after each chunk; 0 means params.q.
  std::size_t queries_per_chunk = 0;
};

/**
   Deterministic trace for (kind, seed). Every chunk holds exactly
   params.chunk_size() updates and is followed by at most q queries, each on a
   vertex set U whose greedy matching already has ceil(delta n) edges.

   uniform-random:       inserts below the target density, deletes above.
   sliding-window:       edges leave in insertion order once the window is full.
   matched-edge-deleter: closed loop against a live engine; every chunk first
                         deletes the edges of the previous answers.
   ors-stress:           a planted perfect matching on most vertices, churn on
                         a small reserved pool, queries inside the matching.
 */
Trace gen_workload(WorkloadKind kind, std::size_t n, std::size_t chunks, std::uint64_t seed,
                   const WorkloadOptions& options);

/// Seed of the engine that run_trace and the closed-loop generator share.
std::uint64_t engine_seed(std::uint64_t trace_seed);

// ---------------------------------------------------------------------------
// Static instances for the opportunistic matcher.

struct Instance {
  DynamicGraph graph;
  std::vector<Vertex> query;  // U
};

/// Complete graph, U = all vertices.
Instance complete_instance(std::size_t n);

/// U holds a perfect matching on `matched` vertices that is induced in G[U];
/// every vertex of U is joined to every vertex outside U.
Instance planted_induced_instance(std::size_t n, std::size_t matched);

/// G(n, p) plus a planted perfect matching on `matched` random vertices;
/// U = all vertices.
Instance random_instance(std::size_t n, double p, std::size_t matched, std::uint64_t seed);

/// Disjoint cliques of size `block` covering the first n - n % block
/// vertices; U = all vertices. Internal degree of any matching is block - 1.
Instance clique_blocks_instance(std::size_t n, std::size_t block);

}  // namespace dynmatch::harness
