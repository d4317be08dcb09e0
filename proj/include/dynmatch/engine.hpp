#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynmatch/common.hpp"
#include "dynmatch/graph_store.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/ors.hpp"

namespace dynmatch {

/// Parameters of the chunked subset-query problem solved by Solver.
struct ProblemParams {
  std::size_t n = 0;
  std::size_t m = 0;  // promised bound on the number of edges at any time
  std::size_t q = 1;  // queries allowed after each chunk
  double gamma = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  std::size_t k = 1;
  double beta = 1.0;

  /// Throws InvalidParams with the violated condition.
  void validate() const;
  /// ceil(alpha * n) events per chunk.
  std::size_t chunk_size() const;
  /// ceil(gamma * delta * n), the minimum answer size.
  std::size_t answer_size() const;

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;
};

struct UpdateEvent {
  enum class Kind { Insert, Delete, Empty };
  Kind kind = Kind::Empty;
  Vertex u = 0;
  Vertex v = 0;

  static UpdateEvent insert(Vertex u, Vertex v) { return {Kind::Insert, u, v}; }
  static UpdateEvent erase(Vertex u, Vertex v) { return {Kind::Delete, u, v}; }
  static UpdateEvent empty() { return {}; }
  Edge edge() const { return Edge{u, v}.normalized(); }
  friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

/// Chunks per batch. k = 1:
///   ceil(sqrt(m n^{6 gamma} beta / (alpha n q^2)))
/// k >= 2:
///   ceil((m/n)^{k/(k+1)} beta^{1/(k+1)} / ((2q)^{((k-2)k + k + 1)/(k+1)} alpha))
/// Never below 1.
std::size_t batch_length(const ProblemParams& params);

/// Parameters of the two depth k-1 solvers run on G_batch and G_match:
/// gamma * 12, delta / 12, m = t * q * alpha * n, everything else copied.
ProblemParams derive_child_params(const ProblemParams& params, std::size_t t);

/// Amortized per-update work the analysis allows at the current beta,
/// without the unspecified polylog factor. Used only for overrun detection.
double per_update_target(const ProblemParams& params);

enum class QueryPath { Batch, Match, Old };
std::string_view query_path_name(QueryPath path) noexcept;

struct QueryAnswer {
  Matching matching;
  /// Subgraph chosen at each recursion level, outermost first.
  std::vector<QueryPath> route;
  /// Internal degree recorded when the answer was moved out of G_old.
  std::optional<std::size_t> delta_in;
  std::uint64_t ops = 0;
};

struct SolverOptions {
  double budget_constant = 32.0;
  /// Gate for forwarding queries to a child; greedy when null.
  std::shared_ptr<const MatchingSizeEstimator> estimator;
};

/**
   Depth-k solver for the chunked subset-query problem.

   The edges are split between G_old (the graph at batch start, deletions
   only), G_batch (insertions of the current batch) and G_match (matchings
   moved out of G_old by queries). For k = 1 queries try greedy on G_batch,
   then greedy on G_match, then the opportunistic matcher on G_old; for
   k >= 2 G_batch and G_match are each run by a depth k-1 solver and a size
   estimate decides whether to forward. A batch lasts t chunks; the next
   chunk after that starts a new batch over the current graph.
 */
class Solver {
 public:
  using BatchObserver = std::function<void(std::size_t batch, const DegreedMatchingSeq&)>;

  Solver(const ProblemParams& params, std::uint64_t seed, SolverOptions options = {});
  /// Starts the first batch with G_old = initial instead of an empty graph.
  Solver(const ProblemParams& params, std::uint64_t seed, SolverOptions options,
         const DynamicGraph& initial);
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  const ProblemParams& params() const noexcept { return params_; }
  std::size_t batch_length() const noexcept { return t_; }

  /// Applies exactly chunk_size() events atomically: on error nothing
  /// changes. Throws ChunkSizeMismatch, MissingEdge, DuplicateEdge, SelfLoop,
  /// VertexOutOfRange or EdgeLimitExceeded.
  void apply_chunk(std::span<const UpdateEvent> chunk);

  /// Caller promises mu(G[U]) >= delta * n. Throws QueryQuotaExceeded after
  /// q queries since the last chunk, PromiseViolation from the matcher.
  QueryAnswer answer_query(const VertexSet& U);

  /// Ends the current batch, returning the matchings moved out of G_old
  /// with their recorded internal degrees, and starts a new one.
  DegreedMatchingSeq finalize_batch();

  const DegreedMatchingSeq& moved_log() const noexcept { return moved_log_; }
  void set_batch_observer(BatchObserver observer) { observer_ = std::move(observer); }

  const DynamicGraph& g_old() const noexcept { return g_old_; }
  const DynamicGraph& g_batch() const noexcept { return g_batch_; }
  const DynamicGraph& g_match() const noexcept { return g_match_; }
  const Solver* child_batch() const noexcept { return child_batch_.get(); }
  const Solver* child_match() const noexcept { return child_match_.get(); }

  std::size_t edge_count() const noexcept;
  bool has_edge(Vertex u, Vertex v) const;
  std::vector<Edge> edges() const;

  std::size_t batch_index() const noexcept { return batch_index_; }
  std::size_t chunks_done() const noexcept { return chunks_done_; }
  std::size_t queries_since_chunk() const noexcept { return queries_; }

  /// Work in the current batch, children included.
  std::uint64_t op_count() const noexcept { return batch_ops_; }
  std::uint64_t total_ops() const noexcept { return total_ops_; }
  /// budget_constant * t * chunk_size * per_update_target.
  double op_budget() const;
  bool over_budget() const { return static_cast<double>(batch_ops_) > op_budget(); }

  /// Structural checks, recursively into children. With a reference graph
  /// the union of the three parts must equal it. Returns the problems found.
  std::vector<std::string> check_invariants(const DynamicGraph* reference = nullptr) const;

 private:
  void start_batch();
  void charge(std::uint64_t ops);
  void validate_chunk(std::span<const UpdateEvent> chunk) const;
  void feed_child(Solver& child, std::vector<UpdateEvent> events);
  QueryAnswer answer_from_old(const VertexSet& U);
  std::uint64_t graph_steps() const noexcept;

  ProblemParams params_;
  SolverOptions options_;
  std::uint64_t seed_;
  Rng rng_;
  std::size_t t_ = 1;

  DynamicGraph g_old_, g_batch_, g_match_;
  std::unique_ptr<Solver> child_batch_, child_match_;
  DegreedMatchingSeq moved_log_;
  BatchObserver observer_;

  std::size_t batch_index_ = 0;
  std::size_t chunks_done_ = 0;
  std::size_t queries_ = 0;
  std::uint64_t batch_ops_ = 0;
  std::uint64_t total_ops_ = 0;
};

}  // namespace dynmatch
