#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/driver.hpp"
#include "dynmatch/engine.hpp"
#include "dynmatch/harness/trace.hpp"
#include "dynmatch/matching.hpp"

namespace dynmatch::harness {

/// engine: the trace's chunks and queries go straight to a Solver built from
///         the header parameters.
/// driver: only the updates are used; a Driver recomputes after every chunk
///         of its own size.
enum class RunMode { Engine, Driver };

struct RunConfig {
  RunMode mode = RunMode::Engine;
  /// Engine mode overrides of the header parameters.
  std::optional<std::size_t> k;
  std::optional<double> beta;
  double budget_constant = 32.0;
  /// Driver mode configuration.
  DriverConfig driver;
  /// Test hook: may alter an engine answer before it is checked.
  std::function<void(std::uint64_t seq, Matching&)> corrupt_answer;
  /// Engine mode: receives each finished batch's moved-matching log, and the
  /// log of the last open batch when the trace ends.
  std::function<void(std::size_t batch, const DegreedMatchingSeq&)> on_batch;
  /// verify_trace: also check every query's promise with the exact oracle.
  bool check_promise = true;
};

/// One row per chunk and per query (engine mode) or per recompute (driver
/// mode). path is "update", "recompute", or the query route such as
/// "batch/old".
struct MetricsRow {
  std::uint64_t seq = 0;
  std::size_t batch = 0;
  std::size_t chunk = 0;
  std::uint64_t ops = 0;
  std::size_t answer_size = 0;
  std::string path;
  std::optional<std::size_t> delta_in;
  double beta = 0.0;
  double wall_us = 0.0;
};

inline constexpr const char* kMetricsHeader =
    "seq,batch,chunk,ops,answer_size,path,delta_in,beta,wall_us";
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);

struct RunResult {
  std::vector<MetricsRow> rows;
  std::size_t updates = 0;
  std::size_t chunks = 0;
  std::size_t queries = 0;
  std::uint64_t total_ops = 0;
  std::size_t revisions = 0;
  double final_beta = 0.0;
};

/// Throws MalformedTrace when a query is not at a chunk boundary or the
/// updates do not fill whole chunks (engine mode).
RunResult run_trace(const Trace& trace, const RunConfig& config);

struct Failure {
  std::uint64_t seq = 0;
  std::string what;
};

struct VerifyReport {
  std::vector<Failure> failures;
  std::size_t events_checked = 0;
  std::size_t queries_checked = 0;
  std::size_t chunks_checked = 0;
  std::size_t batches_checked = 0;  // degree witness recounts
  std::vector<std::size_t> answer_sizes;
  RunResult run;

  bool pass() const noexcept { return failures.empty(); }
};

/**
   Replays the trace like run_trace and checks, against an independent
   edge-set oracle:
   - every answer is a matching of G[U] with at least ceil(gamma delta n)
     edges, and every query's promise holds (exact maximum matching);
   - after every chunk and query the three parts partition the graph, the
     nested solvers are consistent, and G_old only lost edges since its
     batch began;
   - every finished batch's recorded degrees bound the suffix internal
     degrees;
   - driver mode: after every chunk the matching has at least mu(G) - eps n
     edges.
   Failures carry the seq of the event that exposed them; errors thrown by
   the engine are reported the same way.
 */
VerifyReport verify_trace(const Trace& trace, const RunConfig& config);

}  // namespace dynmatch::harness
