#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dynmatch/common.hpp"
#include "dynmatch/graph_store.hpp"
#include "dynmatch/matching.hpp"

namespace dynmatch {

/// Parameters of the opportunistic matcher. gamma and delta lie in (0, 1/6).
struct OpportunisticParams {
  double gamma = 1.0 / 12.0;
  double delta = 1.0 / 7.0;
  /// Measure max degree of g[X_{i+1}] after every failed round. Costs
  /// O(sum of degrees) per round and is not counted in ops.
  bool measure_residual = false;

  void validate() const;
  /// Number of sampling rounds, ceil(1/(3 gamma)).
  std::size_t rounds() const;
  /// Required matching size, ceil(gamma * delta * n).
  std::size_t target(std::size_t n) const;
  /// Sampling probability of round i (1-based); exactly 1 in the last round.
  double probability(std::size_t i, std::size_t n) const;
};

struct RoundStats {
  double probability = 0.0;
  std::size_t candidates = 0;  // |X_i|
  std::size_t matched = 0;     // |M_i|
  /// max degree of g[X_{i+1}], only for failed rounds with measure_residual.
  std::optional<std::size_t> residual_max_degree;
};

struct OpportunisticResult {
  Matching matching;
  std::size_t iteration = 0;  // 1-based round that produced the matching
  double p_term = 0.0;
  std::uint64_t ops = 0;
  std::vector<RoundStats> rounds;
};

/// Source of the per-vertex neighbor samples N_i(v).
class NeighborSampler {
 public:
  virtual ~NeighborSampler() = default;
  /// Appends a sample of v's neighbors, each included independently with
  /// probability p, to `out`. Adds the work done to `ops`.
  virtual void sample(const DynamicGraph& g, Vertex v, double p, std::vector<Vertex>& out,
                      std::uint64_t& ops) = 0;
};

/// Draws k ~ Binomial(deg(v), p), then k distinct uniform slots. For p > 1/2
/// the excluded slots are drawn instead, and p == 1 returns every neighbor.
class BinomialNeighborSampler final : public NeighborSampler {
 public:
  explicit BinomialNeighborSampler(Rng& rng) : rng_(rng) {}
  void sample(const DynamicGraph& g, Vertex v, double p, std::vector<Vertex>& out,
              std::uint64_t& ops) override;

 private:
  Rng& rng_;
  std::vector<std::uint32_t> picked_;
  std::vector<char> mark_;
};

/// Each neighbor of v independently with probability p.
std::vector<Vertex> sample_neighborhood(const DynamicGraph& g, Vertex v, double p, Rng& rng);

/**
   Finds a matching of at least ceil(gamma * delta * n) edges inside g[U],
   given the promise mu(g[U]) >= delta * n.

   Round i samples every candidate's neighborhood with probability
   p_i = min(n^{3 gamma i} / n, 1), runs greedy over the candidates in
   ascending order, and stops at the first round whose matching reaches the
   target; otherwise the matched vertices leave the candidate set. The cost
   is proportional to m * p of the final round, so the call is cheap exactly
   when the returned matching has large internal degree.

   Throws PromiseViolation if no round reaches the target.
 */
OpportunisticResult opportunistic_match(const DynamicGraph& g, const VertexSet& U,
                                        const OpportunisticParams& params,
                                        NeighborSampler& sampler);

OpportunisticResult opportunistic_match(const DynamicGraph& g, const VertexSet& U,
                                        const OpportunisticParams& params, Rng& rng);

}  // namespace dynmatch
