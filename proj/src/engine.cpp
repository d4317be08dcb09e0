#include "dynmatch/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "dynmatch/opportunistic.hpp"

namespace dynmatch {

namespace {

std::string fmt(double x) {
  std::string s = std::to_string(x);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::InvalidParams, what); }

std::size_t max_edges(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace

void ProblemParams::validate() const {
  if (n < 2) invalid("n must be at least 2");
  if (q < 1) invalid("q must be at least 1");
  if (k < 1) invalid("k must be at least 1");
  const double gamma_cap = std::pow(1.0 / 12.0, static_cast<double>(k));
  if (!(gamma > 0.0 && gamma < gamma_cap)) {
    invalid("gamma=" + fmt(gamma) + " must lie in (0, (1/12)^" + std::to_string(k) + ")");
  }
  if (!(delta > 0.0 && delta < 1.0 / 3.0)) {
    invalid("delta=" + fmt(delta) + " must lie in (0, 1/3)");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) invalid("alpha=" + fmt(alpha) + " must lie in (0, 1]");
  if (alpha < gamma * delta * (1.0 - 1e-12)) {
    invalid("alpha=" + fmt(alpha) + " is below gamma*delta=" + fmt(gamma * delta));
  }
  if (m > max_edges(n)) {
    invalid("m=" + std::to_string(m) + " exceeds n(n-1)/2=" + std::to_string(max_edges(n)));
  }
  if (!(beta >= 1.0 && std::isfinite(beta))) invalid("beta must be a finite value >= 1");
}

std::size_t ProblemParams::chunk_size() const {
  return static_cast<std::size_t>(std::max<long long>(1, ceil_tol(alpha * static_cast<double>(n))));
}

std::size_t ProblemParams::answer_size() const {
  return static_cast<std::size_t>(
      std::max<long long>(1, ceil_tol(gamma * delta * static_cast<double>(n))));
}

std::size_t batch_length(const ProblemParams& p) {
  p.validate();
  const double n = static_cast<double>(p.n);
  const double m = static_cast<double>(p.m);
  const double q = static_cast<double>(p.q);
  double t = 0.0;
  if (p.k == 1) {
    t = std::sqrt(m * std::pow(n, 6.0 * p.gamma) * p.beta / (p.alpha * n * q * q));
  } else {
    const double k = static_cast<double>(p.k);
    const double q_exp = ((k - 2.0) * k + (k + 1.0)) / (k + 1.0);
    t = std::pow(m / n, k / (k + 1.0)) * std::pow(p.beta, 1.0 / (k + 1.0)) /
        (std::pow(2.0 * q, q_exp) * p.alpha);
  }
  return static_cast<std::size_t>(std::max<long long>(1, ceil_tol(t)));
}

ProblemParams derive_child_params(const ProblemParams& p, std::size_t t) {
  p.validate();
  if (p.k < 2) invalid("child parameters need k >= 2");
  if (t < 1) invalid("batch length must be at least 1");
  ProblemParams c = p;
  c.k = p.k - 1;
  c.gamma = p.gamma * 12.0;
  c.delta = p.delta / 12.0;
  const std::size_t bound = t * p.q * p.chunk_size();
  c.m = std::min(bound, max_edges(p.n));
  c.validate();
  return c;
}

double per_update_target(const ProblemParams& p) {
  const double n = static_cast<double>(p.n);
  const double m = static_cast<double>(p.m);
  const double q = static_cast<double>(p.q);
  const double n6g = std::pow(n, 6.0 * p.gamma);
  if (p.k == 1) return q * std::sqrt(m * n6g * p.beta / (p.alpha * n));
  const double k = static_cast<double>(p.k);
  return std::pow(2.0 * q, k - 1.0) * std::pow(m / n, 1.0 / (k + 1.0)) *
         std::pow(p.beta, k / (k + 1.0)) * n6g;
}

std::string_view query_path_name(QueryPath path) noexcept {
  switch (path) {
    case QueryPath::Batch: return "batch";
    case QueryPath::Match: return "match";
    case QueryPath::Old: return "old";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Solver::Solver(const ProblemParams& params, std::uint64_t seed, SolverOptions options)
    : params_(params),
      options_(std::move(options)),
      seed_(seed),
      rng_(derive_seed(seed, "solver")),
      g_old_(params.n),
      g_batch_(params.n),
      g_match_(params.n) {
  params_.validate();
  t_ = dynmatch::batch_length(params_);
  if (!options_.estimator) options_.estimator = std::make_shared<GreedySizeEstimator>();
  start_batch();
}

Solver::Solver(const ProblemParams& params, std::uint64_t seed, SolverOptions options,
               const DynamicGraph& initial)
    : Solver(params, seed, std::move(options)) {
  if (initial.vertex_count() != params_.n) {
    invalid("initial graph has " + std::to_string(initial.vertex_count()) + " vertices, n=" +
            std::to_string(params_.n));
  }
  if (initial.edge_count() > params_.m) {
    throw Error(Errc::EdgeLimitExceeded, "initial graph exceeds m=" + std::to_string(params_.m));
  }
  const std::uint64_t before = graph_steps();
  initial.for_each_edge([&](Vertex u, Vertex v) { g_old_.insert_edge(u, v); });
  charge(graph_steps() - before);
}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

std::uint64_t Solver::graph_steps() const noexcept {
  return g_old_.step_count() + g_batch_.step_count() + g_match_.step_count();
}

void Solver::charge(std::uint64_t ops) {
  batch_ops_ += ops;
  total_ops_ += ops;
}

void Solver::start_batch() {
  const std::uint64_t before = graph_steps();
  g_batch_.for_each_edge([&](Vertex u, Vertex v) { g_old_.insert_edge(u, v); });
  g_match_.for_each_edge([&](Vertex u, Vertex v) { g_old_.insert_edge(u, v); });
  const std::uint64_t moved = graph_steps() - before;
  g_batch_.clear();
  g_match_.clear();

  moved_log_ = DegreedMatchingSeq{params_.n, {}, {}};
  chunks_done_ = 0;
  queries_ = 0;
  batch_ops_ = 0;
  charge(moved);

  if (params_.k >= 2) {
    const ProblemParams child = derive_child_params(params_, t_);
    const std::string tag = std::to_string(batch_index_);
    child_batch_ = std::make_unique<Solver>(child, derive_seed(seed_, "batch/" + tag), options_);
    child_match_ = std::make_unique<Solver>(child, derive_seed(seed_, "match/" + tag), options_);
  }
}

DegreedMatchingSeq Solver::finalize_batch() {
  DegreedMatchingSeq log = std::move(moved_log_);
  if (observer_) observer_(batch_index_, log);
  ++batch_index_;
  start_batch();
  return log;
}

std::size_t Solver::edge_count() const noexcept {
  return g_old_.edge_count() + g_batch_.edge_count() + g_match_.edge_count();
}

bool Solver::has_edge(Vertex u, Vertex v) const {
  return g_old_.has_edge(u, v) || g_batch_.has_edge(u, v) || g_match_.has_edge(u, v);
}

std::vector<Edge> Solver::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (const DynamicGraph* g : {&g_old_, &g_batch_, &g_match_}) {
    g->for_each_edge([&](Vertex u, Vertex v) { out.push_back({u, v}); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Solver::op_budget() const {
  return options_.budget_constant * static_cast<double>(t_) *
         static_cast<double>(params_.chunk_size()) * per_update_target(params_);
}

void Solver::validate_chunk(std::span<const UpdateEvent> chunk) const {
  if (chunk.size() != params_.chunk_size()) {
    throw Error(Errc::ChunkSizeMismatch, "got " + std::to_string(chunk.size()) +
                                             " events, chunk size is " +
                                             std::to_string(params_.chunk_size()));
  }
  std::unordered_map<Edge, bool, EdgeHash> overlay;
  std::size_t count = edge_count();
  for (const UpdateEvent& e : chunk) {
    if (e.kind == UpdateEvent::Kind::Empty) continue;
    if (e.u >= params_.n || e.v >= params_.n) {
      throw Error(Errc::VertexOutOfRange, "event (" + std::to_string(e.u) + "," +
                                              std::to_string(e.v) + ")");
    }
    if (e.u == e.v) throw Error(Errc::SelfLoop, "event on vertex " + std::to_string(e.u));
    const Edge edge = e.edge();
    const auto it = overlay.find(edge);
    const bool present = it != overlay.end() ? it->second : has_edge(edge.u, edge.v);
    const std::string name = "(" + std::to_string(edge.u) + "," + std::to_string(edge.v) + ")";
    if (e.kind == UpdateEvent::Kind::Insert) {
      if (present) throw Error(Errc::DuplicateEdge, "insert of present edge " + name);
      if (++count > params_.m) {
        throw Error(Errc::EdgeLimitExceeded,
                    "insert of " + name + " exceeds m=" + std::to_string(params_.m));
      }
      overlay[edge] = true;
    } else {
      if (!present) throw Error(Errc::MissingEdge, "delete of absent edge " + name);
      --count;
      overlay[edge] = false;
    }
  }
}

void Solver::feed_child(Solver& child, std::vector<UpdateEvent> events) {
  events.resize(child.params().chunk_size(), UpdateEvent::empty());
  const std::uint64_t before = child.total_ops();
  child.apply_chunk(events);
  charge(child.total_ops() - before);
}

void Solver::apply_chunk(std::span<const UpdateEvent> chunk) {
  validate_chunk(chunk);
  if (chunks_done_ >= t_) finalize_batch();

  const std::uint64_t before = graph_steps();
  std::vector<UpdateEvent> to_batch, to_match;
  for (const UpdateEvent& e : chunk) {
    switch (e.kind) {
      case UpdateEvent::Kind::Empty:
        break;
      case UpdateEvent::Kind::Insert:
        g_batch_.insert_edge(e.u, e.v);
        to_batch.push_back(e);
        break;
      case UpdateEvent::Kind::Delete:
        if (g_batch_.has_edge(e.u, e.v)) {
          g_batch_.delete_edge(e.u, e.v);
          to_batch.push_back(e);
        } else if (g_match_.has_edge(e.u, e.v)) {
          g_match_.delete_edge(e.u, e.v);
          to_match.push_back(e);
        } else {
          g_old_.delete_edge(e.u, e.v);
        }
        break;
    }
  }
  charge(chunk.size() + (graph_steps() - before));
  if (params_.k >= 2) {
    feed_child(*child_batch_, std::move(to_batch));
    feed_child(*child_match_, std::move(to_match));
  }
  ++chunks_done_;
  queries_ = 0;
}

QueryAnswer Solver::answer_from_old(const VertexSet& U) {
  const std::size_t target = params_.answer_size();
  OpportunisticParams op;
  op.gamma = 2.0 * params_.gamma;
  op.delta = params_.delta / 2.0;
  OpportunisticResult res = opportunistic_match(g_old_, U, op, rng_);
  charge(res.ops);
  if (res.matching.size() < target) {
    throw Error(Errc::PromiseViolation, "G_old answer below " + std::to_string(target));
  }
  res.matching.truncate(target);

  QueryAnswer ans;
  ans.route.push_back(QueryPath::Old);
  ans.delta_in = max_internal_degree(g_old_, res.matching);

  const std::uint64_t before = graph_steps();
  std::vector<UpdateEvent> moved;
  for (const Edge& e : res.matching.edges()) {
    g_old_.delete_edge(e.u, e.v);
    g_match_.insert_edge(e.u, e.v);
    moved.push_back(UpdateEvent::insert(e.u, e.v));
  }
  charge(graph_steps() - before);
  moved_log_.matchings.push_back(res.matching.edges());
  moved_log_.degrees.push_back(*ans.delta_in);
  if (params_.k >= 2) feed_child(*child_match_, std::move(moved));
  ans.matching = std::move(res.matching);
  return ans;
}

QueryAnswer Solver::answer_query(const VertexSet& U) {
  if (queries_ >= params_.q) {
    throw Error(Errc::QueryQuotaExceeded,
                "already answered q=" + std::to_string(params_.q) + " queries since the last chunk");
  }
  ++queries_;
  const std::uint64_t start = total_ops_;
  const std::size_t target = params_.answer_size();
  QueryAnswer ans;

  if (params_.k == 1) {
    std::uint64_t ops = 0;
    Matching M = greedy_matching(g_batch_, U, &ops);
    if (M.size() >= target) {
      ans.matching = std::move(M);
      ans.route.push_back(QueryPath::Batch);
    } else {
      M = greedy_matching(g_match_, U, &ops);
      if (M.size() >= target) {
        ans.matching = std::move(M);
        ans.route.push_back(QueryPath::Match);
      }
    }
    charge(ops);
  } else {
    const double eps = params_.delta / 24.0;
    const auto threshold = static_cast<std::size_t>(
        std::max<long long>(1, ceil_tol(params_.delta / 12.0 * static_cast<double>(params_.n))));
    const std::pair<QueryPath, Solver*> sides[] = {{QueryPath::Batch, child_batch_.get()},
                                                   {QueryPath::Match, child_match_.get()}};
    for (const auto& [path, child] : sides) {
      const DynamicGraph& g = path == QueryPath::Batch ? g_batch_ : g_match_;
      std::uint64_t ops = 0;
      const SizeEstimate est = options_.estimator->estimate(g, U, eps, &ops);
      charge(ops);
      if (est.value < threshold) continue;
      const std::uint64_t before = child->total_ops();
      QueryAnswer sub = child->answer_query(U);
      charge(child->total_ops() - before);
      ans.matching = std::move(sub.matching);
      ans.route.push_back(path);
      ans.route.insert(ans.route.end(), sub.route.begin(), sub.route.end());
      ans.delta_in = sub.delta_in;
      break;
    }
  }

  if (ans.route.empty()) ans = answer_from_old(U);
  ans.ops = total_ops_ - start;
  return ans;
}

std::vector<std::string> Solver::check_invariants(const DynamicGraph* reference) const {
  std::vector<std::string> problems;
  const auto name = [](Vertex u, Vertex v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
  };
  g_batch_.for_each_edge([&](Vertex u, Vertex v) {
    if (g_old_.has_edge(u, v) || g_match_.has_edge(u, v)) {
      problems.push_back("edge " + name(u, v) + " of G_batch also in another part");
    }
  });
  g_match_.for_each_edge([&](Vertex u, Vertex v) {
    if (g_old_.has_edge(u, v)) problems.push_back("edge " + name(u, v) + " in G_match and G_old");
  });
  if (reference) {
    if (reference->edge_count() != edge_count()) {
      problems.push_back("part sizes sum to " + std::to_string(edge_count()) + ", graph has " +
                         std::to_string(reference->edge_count()));
    }
    reference->for_each_edge([&](Vertex u, Vertex v) {
      if (!has_edge(u, v)) problems.push_back("edge " + name(u, v) + " missing from all parts");
    });
  }
  if (g_batch_.edge_count() > t_ * params_.chunk_size()) {
    problems.push_back("G_batch holds " + std::to_string(g_batch_.edge_count()) +
                       " edges, above t * chunk size");
  }
  std::unordered_set<Edge, EdgeHash> moved;
  for (std::size_t i = 0; i < moved_log_.size(); ++i) {
    if (moved_log_.matchings[i].size() != params_.answer_size()) {
      problems.push_back("moved matching " + std::to_string(i) + " has the wrong size");
    }
    if (moved_log_.degrees[i] < 1) problems.push_back("moved matching without degree witness");
    for (const Edge& e : moved_log_.matchings[i]) {
      if (!moved.insert(e).second) problems.push_back("moved edge " + name(e.u, e.v) + " twice");
    }
  }
  if ((params_.k >= 2) != (child_batch_ && child_match_)) {
    problems.push_back("child solvers present iff k >= 2 violated");
  }
  if (child_batch_) {
    for (auto& p : child_batch_->check_invariants(&g_batch_)) problems.push_back("child_batch: " + p);
    for (auto& p : child_match_->check_invariants(&g_match_)) problems.push_back("child_match: " + p);
  }
  return problems;
}

}  // namespace dynmatch
