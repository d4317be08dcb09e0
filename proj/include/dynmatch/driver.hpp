#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynmatch/common.hpp"
#include "dynmatch/engine.hpp"
#include "dynmatch/graph_store.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/ors.hpp"

namespace dynmatch {

/// How a recompute turns weak subset answers into a matching.
///  exact:       maximum matching of the whole graph, no engine queries.
///  single-shot: one gated query on all vertices.
///  stress:      repeated gated queries on the vertices left unmatched.
enum class BoostStrategy { Exact, SingleShot, Stress };

std::string_view strategy_name(BoostStrategy s) noexcept;
/// Throws InvalidParams for an unknown name.
BoostStrategy parse_strategy(std::string_view name);

struct DriverConfig {
  double epsilon = 0.005;
  /// Accept any epsilon in (0, 1) instead of (0, 1/100). For small-n tests.
  bool relaxed_epsilon = false;
  std::size_t k = 1;
  double f_val = 0.1;
  double g_val = 1.0;
  std::uint64_t restart_threshold = 10'000'000'000ULL;
  double budget_constant = 32.0;
  /// Defaults to ceil(log_4(n^2)).
  std::optional<std::size_t> max_beta_revisions;
  double beta0 = 1.0;
  double eta = 1.0 / 128.0;
  std::size_t max_retries = kDefaultMaxRetries;
  BoostStrategy strategy = BoostStrategy::Exact;
  std::uint64_t seed = 0;

  void validate() const;
  /// (1/20)^k.
  double gamma_boost() const;
};

/// n, m = n(n-1)/2, q = ceil(g_val), gamma = (1/15)^k, delta = f_val,
/// alpha = epsilon^2, k, beta = beta0. Throws InvalidParams when the result
/// is not a valid problem instance.
ProblemParams theorem1_params(std::size_t n, const DriverConfig& config);

std::size_t default_max_beta_revisions(std::size_t n);

struct RevisionRecord {
  double beta_before = 0.0;
  double beta_after = 0.0;
  std::size_t evidence = 0;  // t of the certificate
  std::size_t size_bound = 0;
  OrsCertificate certificate;
  std::size_t batch = 0;
  std::uint64_t update = 0;  // total updates when the revision fired
};

/// Called for every engine query the driver issues.
using QueryObserver = std::function<void(const VertexSet&, const QueryAnswer&)>;

struct OverrunEvent {
  const DegreedMatchingSeq* log = nullptr;
  const OrsCertificate* certificate = nullptr;  // best found; empty for an empty log
  double beta = 0.0;                            // beta in force
  bool revised = false;
};

/// Called for every budget overrun the driver examines.
using OverrunObserver = std::function<void(const OverrunEvent&)>;

/**
   Maintains a matching under edge updates. Every ceil(epsilon^2 n) updates
   form a chunk for the engine, after which the configured strategy
   recomputes the matching; in between, deleted edges are dropped from it.
   When the engine's batch overruns its work budget, the moved matchings are
   turned into an ORS certificate; if it holds more matchings than beta,
   beta is multiplied by 4 and the batch is replayed on a rebuilt engine.
 */
class Driver {
 public:
  Driver(std::size_t n, DriverConfig config);

  /// Returns the recomputed matching when the event completes a chunk.
  std::optional<Matching> process_update(const UpdateEvent& event);

  /// Runs the configured strategy. Throws BoostFailure when an engine answer
  /// breaks its contract.
  Matching recompute_matching();

  /// Fresh engine fed with the current edges, then a recompute.
  void restart();

  /// Extracts a certificate from `log`; when its size exceeds beta, raises
  /// beta by 4 and replays the batch. Returns whether beta changed. Throws
  /// RevisionLimitExceeded when the revision budget is spent.
  bool revise_beta(const DegreedMatchingSeq& log);

  const Matching& matching() const noexcept { return exposed_; }
  const DynamicGraph& graph() const noexcept { return graph_; }
  const Solver& engine() const noexcept { return *engine_; }
  const DriverConfig& config() const noexcept { return config_; }
  const ProblemParams& params() const noexcept { return engine_->params(); }

  double beta() const noexcept { return beta_; }
  std::size_t revisions() const noexcept { return history_.size(); }
  std::size_t max_revisions() const noexcept { return max_revisions_; }
  const std::vector<RevisionRecord>& revision_history() const noexcept { return history_; }
  /// Overruns whose certificate did not beat beta.
  std::size_t unconfirmed_overruns() const noexcept { return unconfirmed_overruns_; }

  std::size_t restarts() const noexcept { return restarts_; }
  std::uint64_t updates_since_restart() const noexcept { return since_restart_; }
  std::uint64_t total_updates() const noexcept { return total_updates_; }
  std::size_t chunk_size() const noexcept { return chunk_size_; }
  std::size_t pending_updates() const noexcept { return pending_.size(); }
  std::uint64_t queries_issued() const noexcept { return queries_issued_; }

  void set_query_observer(QueryObserver observer) { query_observer_ = std::move(observer); }
  void set_overrun_observer(OverrunObserver observer) { overrun_observer_ = std::move(observer); }

 private:
  Matching weak_query(const VertexSet& U);
  bool gate(const VertexSet& U) const;
  void flush_chunk();
  void check_overrun();
  std::unique_ptr<Solver> make_engine(const std::string& label);

  std::size_t n_;
  DriverConfig config_;
  double beta_;
  std::size_t chunk_size_;
  std::size_t max_revisions_;
  Rng rng_;

  DynamicGraph graph_;
  std::unique_ptr<Solver> engine_;
  Matching exposed_;

  std::vector<UpdateEvent> pending_;
  DynamicGraph batch_snapshot_;
  std::vector<std::vector<UpdateEvent>> journal_;
  std::size_t checked_log_size_ = 0;  // moved_log length last examined
  std::size_t checked_batch_ = 0;

  std::vector<RevisionRecord> history_;
  std::size_t unconfirmed_overruns_ = 0;
  std::size_t restarts_ = 0;
  std::size_t engines_built_ = 0;
  std::uint64_t since_restart_ = 0;
  std::uint64_t total_updates_ = 0;
  std::uint64_t queries_issued_ = 0;
  QueryObserver query_observer_;
  OverrunObserver overrun_observer_;
};

}  // namespace dynmatch
