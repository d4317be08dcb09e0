#include "dynmatch/harness/runner.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <unordered_set>

#include "dynmatch/harness/workload.hpp"

namespace dynmatch::harness {

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) {
    out << r.seq << ',' << r.batch << ',' << r.chunk << ',' << r.ops << ',' << r.answer_size << ','
        << r.path << ',';
    if (r.delta_in) out << *r.delta_in;
    out << ',' << r.beta << ',' << r.wall_us << '\n';
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

std::string route_name(const std::vector<QueryPath>& route) {
  std::string s;
  for (QueryPath p : route) {
    if (!s.empty()) s += '/';
    s += query_path_name(p);
  }
  return s;
}

std::string edge_name(Edge e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

// Drives one trace through a solver or a driver; with a report attached it
// also checks every step against its own edge-set oracle.
class Replayer {
 public:
  Replayer(const Trace& trace, const RunConfig& config, VerifyReport* report)
      : trace_(trace), config_(config), report_(report), n_(trace.header.n), reference_(n_) {}

  RunResult run() {
    if (config_.mode == RunMode::Engine) {
      run_engine();
    } else {
      run_driver();
    }
    return std::move(result_);
  }

 private:
  bool verifying() const { return report_ != nullptr; }

  void fail(std::uint64_t seq, std::string what) {
    report_->failures.push_back({seq, std::move(what)});
  }

  // Oracle bookkeeping. Returns false (after reporting) on an invalid update.
  bool track(const TraceEvent& ev) {
    if (ev.op == TraceEvent::Op::Empty) return true;
    const Edge e = Edge{ev.u, ev.v}.normalized();
    if (e.u == e.v || e.v >= n_) {
      fail(ev.seq, "invalid edge " + edge_name(e));
      return false;
    }
    if (ev.op == TraceEvent::Op::Insert) {
      if (!oracle_.insert(e).second) {
        fail(ev.seq, "insert of present edge " + edge_name(e));
        return false;
      }
      reference_.insert_edge(e.u, e.v);
    } else {
      if (oracle_.erase(e) == 0) {
        fail(ev.seq, "delete of absent edge " + edge_name(e));
        return false;
      }
      reference_.delete_edge(e.u, e.v);
    }
    return true;
  }

  void check_answer(std::uint64_t seq, const VertexSet& U, const Matching& M, std::size_t need) {
    std::unordered_set<Vertex> seen;
    for (const Edge& e : M.edges()) {
      if (!oracle_.contains(e.normalized())) fail(seq, "answer edge " + edge_name(e) + " not in G");
      if (!U.contains(e.u) || !U.contains(e.v)) {
        fail(seq, "answer edge " + edge_name(e) + " leaves U");
      }
      if (!seen.insert(e.u).second || !seen.insert(e.v).second) {
        fail(seq, "answer edges share a vertex at " + edge_name(e));
      }
    }
    if (M.size() < need) {
      fail(seq, "answer has " + std::to_string(M.size()) + " edges, need " + std::to_string(need));
    }
  }

  void check_promise(std::uint64_t seq, const VertexSet& U, double delta) {
    if (!config_.check_promise) return;
    const std::size_t mu = exact_max_matching(reference_, U, std::max(kDefaultExactCap, n_)).size();
    if (static_cast<double>(mu) < delta * static_cast<double>(n_) - 1e-9) {
      fail(seq, "query promise broken: mu(G[U])=" + std::to_string(mu));
    }
  }

  void check_witness(std::uint64_t seq, const DegreedMatchingSeq& log) {
    ++report_->batches_checked;
    for (std::size_t i = 0; i < log.size(); ++i) {
      std::set<Vertex> inside;
      for (const Edge& e : log.matchings[i]) {
        inside.insert(e.u);
        inside.insert(e.v);
      }
      std::map<Vertex, std::size_t> degree;
      for (std::size_t j = i; j < log.size(); ++j) {
        for (const Edge& e : log.matchings[j]) {
          if (inside.contains(e.u) && inside.contains(e.v)) {
            ++degree[e.u];
            ++degree[e.v];
          }
        }
      }
      for (const auto& [v, d] : degree) {
        if (d > log.degrees[i]) {
          fail(seq, "moved matching " + std::to_string(i) + " has internal degree " +
                        std::to_string(d) + " above its witness " + std::to_string(log.degrees[i]));
          break;
        }
      }
    }
  }

  void check_engine_state(std::uint64_t seq, const Solver& engine) {
    std::vector<Edge> expected(oracle_.begin(), oracle_.end());
    if (engine.edges() != expected) fail(seq, "engine edge set differs from the oracle");
    for (const std::string& p : engine.check_invariants()) fail(seq, p);
    if (engine.batch_index() != snapshot_batch_) {
      snapshot_batch_ = engine.batch_index();
      old_snapshot_ = pre_chunk_;
    }
    engine.g_old().for_each_edge([&](Vertex u, Vertex v) {
      if (!old_snapshot_.contains(Edge{u, v})) {
        fail(seq, "G_old gained edge " + edge_name(Edge{u, v}) + " inside a batch");
      }
    });
  }

  void run_engine() {
    ProblemParams params = trace_.header.params;
    params.n = n_;
    if (config_.k) params.k = *config_.k;
    if (config_.beta) params.beta = *config_.beta;
    SolverOptions opts;
    opts.budget_constant = config_.budget_constant;
    Solver engine(params, engine_seed(trace_.header.seed), opts);
    engine.set_batch_observer([this](std::size_t batch, const DegreedMatchingSeq& log) {
      if (verifying()) check_witness(current_seq_, log);
      if (config_.on_batch) config_.on_batch(batch, log);
    });
    const std::size_t chunk_size = params.chunk_size();
    std::vector<UpdateEvent> pending;
    std::size_t chunk_index = 0;

    for (const TraceEvent& ev : trace_.events) {
      current_seq_ = ev.seq;
      if (verifying()) ++report_->events_checked;
      if (ev.is_update()) {
        if (pending.empty() && verifying()) pre_chunk_ = oracle_;
        if (verifying() && !track(ev)) return;
        pending.push_back(ev.update());
        ++result_.updates;
        if (pending.size() < chunk_size) continue;
        const auto start = Clock::now();
        const std::uint64_t before = engine.total_ops();
        try {
          engine.apply_chunk(pending);
        } catch (const Error& e) {
          if (!verifying()) throw;
          fail(ev.seq, e.what());
          return;
        }
        pending.clear();
        ++result_.chunks;
        result_.rows.push_back({ev.seq, engine.batch_index(), chunk_index++,
                                engine.total_ops() - before, 0, "update", std::nullopt,
                                params.beta, micros_since(start)});
        if (verifying()) {
          ++report_->chunks_checked;
          check_engine_state(ev.seq, engine);
        }
        continue;
      }

      if (!pending.empty()) {
        throw Error(Errc::MalformedTrace,
                    "query at seq " + std::to_string(ev.seq) + " is not at a chunk boundary");
      }
      const VertexSet U(n_, ev.vertices);
      if (verifying()) check_promise(ev.seq, U, params.delta);
      const auto start = Clock::now();
      QueryAnswer ans;
      try {
        ans = engine.answer_query(U);
      } catch (const Error& e) {
        if (!verifying()) throw;
        fail(ev.seq, e.what());
        continue;
      }
      if (config_.corrupt_answer) config_.corrupt_answer(ev.seq, ans.matching);
      ++result_.queries;
      result_.rows.push_back({ev.seq, engine.batch_index(), chunk_index, ans.ops,
                              ans.matching.size(), route_name(ans.route), ans.delta_in,
                              params.beta, micros_since(start)});
      if (verifying()) {
        ++report_->queries_checked;
        report_->answer_sizes.push_back(ans.matching.size());
        check_answer(ev.seq, U, ans.matching, params.answer_size());
        check_engine_state(ev.seq, engine);
      }
    }
    if (!pending.empty()) {
      throw Error(Errc::MalformedTrace, "trace ends inside a chunk");
    }
    if (verifying()) check_witness(current_seq_, engine.moved_log());
    if (config_.on_batch) config_.on_batch(engine.batch_index(), engine.moved_log());
    result_.total_ops = engine.total_ops();
    result_.final_beta = params.beta;
  }

  void run_driver() {
    Driver driver(n_, config_.driver);
    const double eps = config_.driver.epsilon;
    double last_beta = driver.beta();
    if (verifying()) {
      driver.set_query_observer([&](const VertexSet& U, const QueryAnswer& ans) {
        check_promise(current_seq_, U, driver.params().delta);
        check_answer(current_seq_, U, ans.matching, driver.params().answer_size());
        ++report_->queries_checked;
      });
    }
    std::size_t chunk_index = 0;
    std::uint64_t ops_before = 0;
    auto start = Clock::now();
    for (const TraceEvent& ev : trace_.events) {
      if (!ev.is_update()) continue;
      current_seq_ = ev.seq;
      if (verifying()) {
        ++report_->events_checked;
        if (!track(ev)) return;
      }
      ++result_.updates;
      std::optional<Matching> M;
      try {
        M = driver.process_update(ev.update());
      } catch (const Error& e) {
        if (!verifying()) throw;
        fail(ev.seq, e.what());
        return;
      }
      if (!M) continue;
      ++result_.chunks;
      const std::uint64_t ops = driver.engine().total_ops();
      result_.rows.push_back({ev.seq, driver.engine().batch_index(), chunk_index++,
                              ops >= ops_before ? ops - ops_before : ops, M->size(), "recompute",
                              std::nullopt, driver.beta(), micros_since(start)});
      ops_before = ops;
      start = Clock::now();
      if (!verifying()) continue;
      ++report_->chunks_checked;
      report_->answer_sizes.push_back(M->size());
      check_answer(ev.seq, VertexSet::all(n_), *M, 0);
      const std::size_t mu =
          exact_max_matching(reference_, VertexSet::all(n_), std::max(kDefaultExactCap, n_)).size();
      if (static_cast<double>(M->size()) < static_cast<double>(mu) - eps * static_cast<double>(n_)) {
        fail(ev.seq, "matching has " + std::to_string(M->size()) + " edges, mu(G)=" +
                         std::to_string(mu));
      }
      if (driver.beta() < last_beta) fail(ev.seq, "beta decreased");
      last_beta = driver.beta();
      if (driver.revisions() > driver.max_revisions()) fail(ev.seq, "too many beta revisions");
      for (const std::string& p : driver.engine().check_invariants(&driver.graph())) fail(ev.seq, p);
      std::vector<Edge> expected(oracle_.begin(), oracle_.end());
      if (driver.graph().edges() != expected) fail(ev.seq, "driver graph differs from the oracle");
    }
    result_.total_ops = driver.engine().total_ops();
    result_.revisions = driver.revisions();
    result_.final_beta = driver.beta();
  }

  const Trace& trace_;
  const RunConfig& config_;
  VerifyReport* report_;
  std::size_t n_;
  RunResult result_;

  std::set<Edge> oracle_;
  DynamicGraph reference_;
  std::set<Edge> pre_chunk_;
  std::set<Edge> old_snapshot_;
  std::size_t snapshot_batch_ = 0;
  std::uint64_t current_seq_ = 0;
};

}  // namespace

RunResult run_trace(const Trace& trace, const RunConfig& config) {
  return Replayer(trace, config, nullptr).run();
}

VerifyReport verify_trace(const Trace& trace, const RunConfig& config) {
  VerifyReport report;
  report.run = Replayer(trace, config, &report).run();
  return report;
}

}  // namespace dynmatch::harness
