#include "dynmatch/driver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace dynmatch {

std::string_view strategy_name(BoostStrategy s) noexcept {
  switch (s) {
    case BoostStrategy::Exact: return "exact";
    case BoostStrategy::SingleShot: return "single-shot";
    case BoostStrategy::Stress: return "stress";
  }
  return "?";
}

BoostStrategy parse_strategy(std::string_view name) {
  if (name == "exact") return BoostStrategy::Exact;
  if (name == "single-shot") return BoostStrategy::SingleShot;
  if (name == "stress") return BoostStrategy::Stress;
  throw Error(Errc::InvalidParams, "unknown strategy '" + std::string(name) +
                                       "' (expected exact, single-shot or stress)");
}

void DriverConfig::validate() const {
  const double eps_cap = relaxed_epsilon ? 1.0 : 0.01;
  if (!(epsilon > 0.0 && epsilon < eps_cap)) {
    throw Error(Errc::InvalidParams, "epsilon=" + std::to_string(epsilon) + " outside (0, " +
                                         (relaxed_epsilon ? "1)" : "1/100)"));
  }
  if (k < 1) throw Error(Errc::InvalidParams, "k must be at least 1");
  if (!(f_val > 0.0)) throw Error(Errc::InvalidParams, "f_val must be positive");
  if (!(g_val > 0.0)) throw Error(Errc::InvalidParams, "g_val must be positive");
  if (restart_threshold < 1) throw Error(Errc::InvalidParams, "restart_threshold must be >= 1");
  if (!(budget_constant > 0.0)) throw Error(Errc::InvalidParams, "budget_constant must be > 0");
  if (!(beta0 >= 1.0)) throw Error(Errc::InvalidParams, "beta0 must be >= 1");
  if (!(eta > 0.0 && eta < 0.01)) throw Error(Errc::EtaOutOfRange, "eta outside (0, 1/100)");
  if (max_retries < 1) throw Error(Errc::InvalidParams, "max_retries must be >= 1");
}

double DriverConfig::gamma_boost() const { return std::pow(1.0 / 20.0, static_cast<double>(k)); }

ProblemParams theorem1_params(std::size_t n, const DriverConfig& config) {
  config.validate();
  ProblemParams p;
  p.n = n;
  p.m = n < 2 ? 0 : n * (n - 1) / 2;
  p.q = static_cast<std::size_t>(std::max<long long>(1, ceil_tol(config.g_val)));
  p.gamma = std::pow(1.0 / 15.0, static_cast<double>(config.k));
  p.delta = config.f_val;
  p.alpha = config.epsilon * config.epsilon;
  p.k = config.k;
  p.beta = config.beta0;
  if (p.alpha < p.gamma * p.delta * (1.0 - 1e-12)) {
    throw Error(Errc::InvalidParams,
                "alpha=epsilon^2=" + std::to_string(p.alpha) + " is below gamma*delta=" +
                    std::to_string(p.gamma * p.delta) + "; lower f_val or raise epsilon");
  }
  p.validate();
  return p;
}

std::size_t default_max_beta_revisions(std::size_t n) {
  if (n < 2) return 1;
  const double nd = static_cast<double>(n);
  return static_cast<std::size_t>(std::max<long long>(1, ceil_tol(std::log(nd * nd) / std::log(4.0))));
}

// ---------------------------------------------------------------------------

namespace {
const OrsCertificate kEmptyCertificate{};
}  // namespace

Driver::Driver(std::size_t n, DriverConfig config)
    : n_(n),
      config_(std::move(config)),
      beta_(config_.beta0),
      chunk_size_(theorem1_params(n, config_).chunk_size()),
      max_revisions_(config_.max_beta_revisions.value_or(default_max_beta_revisions(n))),
      rng_(derive_seed(config_.seed, "driver")),
      graph_(n),
      batch_snapshot_(n) {
  engine_ = make_engine("initial");
}

std::unique_ptr<Solver> Driver::make_engine(const std::string& label) {
  ProblemParams p = theorem1_params(n_, config_);
  p.beta = beta_;
  SolverOptions opts;
  opts.budget_constant = config_.budget_constant;
  const std::string tag = label + "/" + std::to_string(engines_built_++);
  checked_log_size_ = 0;
  checked_batch_ = 0;
  return std::make_unique<Solver>(p, derive_seed(config_.seed, "engine/" + tag), opts);
}

bool Driver::gate(const VertexSet& U) const {
  const ProblemParams& p = engine_->params();
  const auto threshold = static_cast<std::size_t>(
      std::max<long long>(1, ceil_tol(p.delta * static_cast<double>(p.n))));
  return GreedySizeEstimator{}.estimate(graph_, U, p.delta / 2.0).value >= threshold;
}

Matching Driver::weak_query(const VertexSet& U) {
  QueryAnswer ans = engine_->answer_query(U);
  ++queries_issued_;
  if (query_observer_) query_observer_(U, ans);
  const std::size_t need = engine_->params().answer_size();
  if (ans.matching.size() < need) {
    throw Error(Errc::BoostFailure, "engine answer has " + std::to_string(ans.matching.size()) +
                                        " edges, contract needs " + std::to_string(need));
  }
  for (const Edge& e : ans.matching.edges()) {
    if (!U.contains(e.u) || !U.contains(e.v) || !graph_.has_edge(e.u, e.v)) {
      throw Error(Errc::BoostFailure, "engine answer edge (" + std::to_string(e.u) + "," +
                                          std::to_string(e.v) + ") is not in G[U]");
    }
  }
  return std::move(ans.matching);
}

Matching Driver::recompute_matching() {
  switch (config_.strategy) {
    case BoostStrategy::Exact:
      return exact_max_matching(graph_, VertexSet::all(n_), std::max(kDefaultExactCap, n_));
    case BoostStrategy::SingleShot: {
      const VertexSet all = VertexSet::all(n_);
      if (!gate(all)) return greedy_matching(graph_, all);
      return weak_query(all);
    }
    case BoostStrategy::Stress: {
      std::vector<Edge> collected;
      std::vector<char> matched(n_, 0);
      for (std::size_t i = 0; i < engine_->params().q; ++i) {
        std::vector<Vertex> free;
        for (Vertex v = 0; v < n_; ++v) {
          if (!matched[v]) free.push_back(v);
        }
        const VertexSet U(n_, free);
        if (!gate(U)) break;
        const Matching part = weak_query(U);
        for (const Edge& e : part.edges()) {
          collected.push_back(e);
          matched[e.u] = matched[e.v] = 1;
        }
      }
      return greedy_matching(collected);
    }
  }
  throw Error(Errc::InvalidParams, "unknown strategy");
}

void Driver::flush_chunk() {
  if (engine_->chunks_done() >= engine_->batch_length()) {
    // The engine opens a new batch with this chunk; remember where it starts.
    batch_snapshot_ = DynamicGraph(n_);
    for (const Edge& e : engine_->edges()) batch_snapshot_.insert_edge(e.u, e.v);
    journal_.clear();
  }
  engine_->apply_chunk(pending_);
  journal_.push_back(std::move(pending_));
  pending_.clear();
}

std::optional<Matching> Driver::process_update(const UpdateEvent& event) {
  if (pending_.empty() && since_restart_ >= config_.restart_threshold) restart();

  switch (event.kind) {
    case UpdateEvent::Kind::Empty:
      break;
    case UpdateEvent::Kind::Insert:
      graph_.insert_edge(event.u, event.v);
      break;
    case UpdateEvent::Kind::Delete:
      graph_.delete_edge(event.u, event.v);
      exposed_.erase(event.edge());
      break;
  }
  pending_.push_back(event);
  ++since_restart_;
  ++total_updates_;
  if (pending_.size() < chunk_size_) return std::nullopt;

  flush_chunk();
  exposed_ = recompute_matching();
  check_overrun();
  return exposed_;
}

void Driver::check_overrun() {
  if (!engine_->over_budget()) return;
  const DegreedMatchingSeq& log = engine_->moved_log();
  if (checked_batch_ == engine_->batch_index() && checked_log_size_ == log.size()) return;
  checked_batch_ = engine_->batch_index();
  checked_log_size_ = log.size();
  revise_beta(log);
}

bool Driver::revise_beta(const DegreedMatchingSeq& log) {
  if (log.empty()) {
    ++unconfirmed_overruns_;
    if (overrun_observer_) overrun_observer_({&log, &kEmptyCertificate, beta_, false});
    return false;
  }
  const std::size_t l = log.matching_size();
  const std::size_t r = certificate_matching_size(l, config_.eta);
  OrsCertificate best;
  if (r >= 1) best = extract_ors_certificate(log, config_.eta, rng_, config_.max_retries).certificate;
  OrsCertificate pruned = backward_prune_certificate(log, r >= 1 ? r : l);
  if (pruned.t() > best.t()) best = std::move(pruned);
  if (static_cast<double>(best.t()) <= beta_) {
    ++unconfirmed_overruns_;
    if (overrun_observer_) overrun_observer_({&log, &best, beta_, false});
    return false;
  }
  const std::size_t bound = certificate_size_bound(log, config_.eta);
  if (history_.size() >= max_revisions_) {
    std::ostringstream msg;
    msg << "beta=" << beta_ << " after " << history_.size()
        << " revisions; new certificate has t=" << best.t() << " r=" << best.r
        << " (size bound " << bound << ")";
    throw Error(Errc::RevisionLimitExceeded, msg.str());
  }
  if (overrun_observer_) overrun_observer_({&log, &best, beta_, true});

  RevisionRecord rec;
  rec.beta_before = beta_;
  rec.beta_after = 4.0 * beta_;
  rec.evidence = best.t();
  rec.size_bound = bound;
  rec.certificate = std::move(best);
  rec.batch = engine_->batch_index();
  rec.update = total_updates_;
  history_.push_back(std::move(rec));
  beta_ *= 4.0;

  // Rebuild at the start of the batch and replay its chunks.
  ProblemParams p = theorem1_params(n_, config_);
  p.beta = beta_;
  SolverOptions opts;
  opts.budget_constant = config_.budget_constant;
  const std::string tag = "revision/" + std::to_string(engines_built_++);
  engine_ = std::make_unique<Solver>(p, derive_seed(config_.seed, "engine/" + tag), opts,
                                     batch_snapshot_);
  checked_log_size_ = 0;
  checked_batch_ = 0;
  for (const auto& chunk : journal_) engine_->apply_chunk(chunk);
  return true;
}

void Driver::restart() {
  engine_ = make_engine("restart");
  const std::vector<Edge> edges = graph_.edges();
  std::vector<UpdateEvent> chunk;
  for (std::size_t i = 0; i < edges.size(); i += chunk_size_) {
    chunk.clear();
    for (std::size_t j = i; j < std::min(edges.size(), i + chunk_size_); ++j) {
      chunk.push_back(UpdateEvent::insert(edges[j].u, edges[j].v));
    }
    chunk.resize(chunk_size_, UpdateEvent::empty());
    engine_->apply_chunk(chunk);
  }
  engine_->finalize_batch();
  batch_snapshot_ = graph_;
  journal_.clear();
  pending_.clear();
  since_restart_ = 0;
  ++restarts_;
  exposed_ = recompute_matching();
}

}  // namespace dynmatch
