#include "dynmatch/harness/workload.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>

namespace dynmatch::harness {

std::string_view kind_name(WorkloadKind kind) noexcept {
  switch (kind) {
    case WorkloadKind::UniformRandom: return "uniform-random";
    case WorkloadKind::SlidingWindow: return "sliding-window";
    case WorkloadKind::MatchedEdgeDeleter: return "matched-edge-deleter";
    case WorkloadKind::OrsStress: return "ors-stress";
  }
  return "?";
}

WorkloadKind parse_kind(std::string_view name) {
  for (WorkloadKind k : all_kinds()) {
    if (kind_name(k) == name) return k;
  }
  throw Error(Errc::InvalidKind, "unknown workload kind '" + std::string(name) + "'");
}

std::vector<WorkloadKind> all_kinds() {
  return {WorkloadKind::UniformRandom, WorkloadKind::SlidingWindow,
          WorkloadKind::MatchedEdgeDeleter, WorkloadKind::OrsStress};
}

ProblemParams default_workload_params(std::size_t n, std::size_t k) {
  ProblemParams p;
  p.n = n;
  p.k = k;
  p.gamma = 1.0 / (std::pow(12.0, static_cast<double>(k)) + 1.0);
  p.delta = 0.2;
  p.alpha = 0.05;
  p.q = 2;
  p.m = std::min(4 * n, n < 2 ? 0 : n * (n - 1) / 2);
  p.beta = 1.0;
  return p;
}

std::uint64_t engine_seed(std::uint64_t trace_seed) { return derive_seed(trace_seed, "engine"); }

namespace {

// Present edges with O(1) uniform sampling and removal.
class EdgePool {
 public:
  void add(Edge e) {
    index_.emplace(e, edges_.size());
    edges_.push_back(e);
  }
  void remove(Edge e) {
    const auto it = index_.find(e);
    const std::size_t i = it->second;
    index_.erase(it);
    if (i + 1 != edges_.size()) {
      edges_[i] = edges_.back();
      index_[edges_[i]] = i;
    }
    edges_.pop_back();
  }
  Edge sample(Rng& rng) const {
    return edges_[std::uniform_int_distribution<std::size_t>(0, edges_.size() - 1)(rng)];
  }
  std::size_t size() const { return edges_.size(); }

 private:
  std::vector<Edge> edges_;
  std::unordered_map<Edge, std::size_t, EdgeHash> index_;
};

class Generator {
 public:
  Generator(WorkloadKind kind, std::size_t n, std::size_t chunks, std::uint64_t seed,
            const WorkloadOptions& options)
      : kind_(kind),
        n_(n),
        chunks_(chunks),
        opts_(options),
        rng_(derive_seed(seed, "workload")),
        graph_(n) {
    opts_.params.n = n;
    opts_.params.validate();
    if (opts_.queries_per_chunk == 0 || opts_.queries_per_chunk > opts_.params.q) {
      opts_.queries_per_chunk = opts_.params.q;
    }
    chunk_size_ = opts_.params.chunk_size();
    target_ = std::min<std::size_t>(
        static_cast<std::size_t>(opts_.density * static_cast<double>(n)), opts_.params.m);
    trace_.header = TraceHeader{std::string(kind_name(kind)), n, seed, chunks, opts_.params};
    if (kind == WorkloadKind::MatchedEdgeDeleter) {
      solver_ = std::make_unique<Solver>(opts_.params, engine_seed(seed));
    }
    if (kind == WorkloadKind::OrsStress) plant();
  }

  Trace run() {
    for (std::size_t c = 0; c < chunks_; ++c) {
      std::vector<UpdateEvent> chunk;
      for (std::size_t i = 0; i < chunk_size_; ++i) chunk.push_back(next_update());
      if (solver_) solver_->apply_chunk(chunk);
      queries();
    }
    return std::move(trace_);
  }

 private:
  UpdateEvent emit(TraceEvent::Op op, Vertex u, Vertex v) {
    const Edge e = Edge{u, v}.normalized();
    if (op == TraceEvent::Op::Insert) {
      graph_.insert_edge(e.u, e.v);
      pool_.add(e);
    } else if (op == TraceEvent::Op::Delete) {
      graph_.delete_edge(e.u, e.v);
      pool_.remove(e);
    }
    TraceEvent ev;
    ev.seq = seq_++;
    ev.op = op;
    if (op != TraceEvent::Op::Empty) {
      ev.u = e.u;
      ev.v = e.v;
    }
    trace_.events.push_back(ev);
    return ev.update();
  }

  std::optional<Edge> random_absent(Vertex lo, Vertex hi) {
    std::uniform_int_distribution<Vertex> pick(lo, hi - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Vertex u = pick(rng_), v = pick(rng_);
      if (u != v && !graph_.has_edge(u, v)) return Edge{u, v}.normalized();
    }
    return std::nullopt;
  }

  UpdateEvent random_update(std::size_t target) {
    const std::size_t count = pool_.size();
    const bool room = count < opts_.params.m;
    const bool want_insert =
        count == 0 || (room && std::bernoulli_distribution(count < target ? 0.9 : 0.1)(rng_));
    if (want_insert) {
      if (const auto e = random_absent(0, static_cast<Vertex>(n_))) {
        return emit(TraceEvent::Op::Insert, e->u, e->v);
      }
    }
    if (count == 0) return emit(TraceEvent::Op::Empty, 0, 0);
    const Edge e = pool_.sample(rng_);
    return emit(TraceEvent::Op::Delete, e.u, e.v);
  }

  UpdateEvent next_update() {
    switch (kind_) {
      case WorkloadKind::UniformRandom:
        return random_update(target_);
      case WorkloadKind::SlidingWindow: {
        if (window_.size() >= target_ || pool_.size() >= opts_.params.m) {
          const Edge e = window_.front();
          window_.pop_front();
          return emit(TraceEvent::Op::Delete, e.u, e.v);
        }
        if (const auto e = random_absent(0, static_cast<Vertex>(n_))) {
          window_.push_back(*e);
          return emit(TraceEvent::Op::Insert, e->u, e->v);
        }
        return emit(TraceEvent::Op::Empty, 0, 0);
      }
      case WorkloadKind::MatchedEdgeDeleter:
        while (!doomed_.empty()) {
          const Edge e = doomed_.front();
          doomed_.pop_front();
          if (graph_.has_edge(e.u, e.v)) return emit(TraceEvent::Op::Delete, e.u, e.v);
        }
        return random_update(target_);
      case WorkloadKind::OrsStress:
        return ors_update();
    }
    return emit(TraceEvent::Op::Empty, 0, 0);
  }

  void plant() {
    const std::size_t pool = std::min(n_, std::max<std::size_t>(4, n_ / 10));
    core_ = (n_ - pool) & ~std::size_t{1};
    std::vector<Vertex> order(core_);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::shuffle(order.begin(), order.end(), rng_);
    for (std::size_t i = 0; i + 1 < core_; i += 2) planted_.push_back(Edge{order[i], order[i + 1]}.normalized());
  }

  UpdateEvent ors_update() {
    if (next_plant_ < planted_.size() && pool_.size() < opts_.params.m) {
      const Edge e = planted_[next_plant_++];
      return emit(TraceEvent::Op::Insert, e.u, e.v);
    }
    if (!planted_.empty() && std::bernoulli_distribution(0.2)(rng_)) {
      const Edge e = planted_[std::uniform_int_distribution<std::size_t>(0, planted_.size() - 1)(rng_)];
      if (!graph_.has_edge(e.u, e.v)) {
        if (pool_.size() < opts_.params.m) return emit(TraceEvent::Op::Insert, e.u, e.v);
      } else if (missing_planted() * 4 < planted_.size()) {
        return emit(TraceEvent::Op::Delete, e.u, e.v);
      }
    }
    if (n_ - core_ >= 2) {
      std::uniform_int_distribution<Vertex> pick(static_cast<Vertex>(core_), static_cast<Vertex>(n_ - 1));
      const Vertex u = pick(rng_), v = pick(rng_);
      if (u != v) {
        if (graph_.has_edge(u, v)) return emit(TraceEvent::Op::Delete, u, v);
        if (pool_.size() < opts_.params.m) return emit(TraceEvent::Op::Insert, u, v);
      }
    }
    return emit(TraceEvent::Op::Empty, 0, 0);
  }

  std::size_t missing_planted() const {
    std::size_t missing = 0;
    for (const Edge& e : planted_) missing += graph_.has_edge(e.u, e.v) ? 0 : 1;
    return missing;
  }

  void queries() {
    const auto need = static_cast<std::size_t>(
        std::max<long long>(1, ceil_tol(opts_.params.delta * static_cast<double>(n_))));
    std::bernoulli_distribution keep(opts_.query_keep);
    for (std::size_t j = 0; j < opts_.queries_per_chunk; ++j) {
      std::vector<Vertex> members;
      for (Vertex v = 0; v < n_; ++v) {
        if (keep(rng_)) members.push_back(v);
      }
      VertexSet U(n_, members);
      if (greedy_matching(graph_, U).size() < need) {
        U = VertexSet::all(n_);
        if (greedy_matching(graph_, U).size() < need) return;
      }
      TraceEvent ev;
      ev.seq = seq_++;
      ev.op = TraceEvent::Op::Query;
      ev.vertices.assign(U.members().begin(), U.members().end());
      trace_.events.push_back(std::move(ev));
      if (solver_) {
        const QueryAnswer ans = solver_->answer_query(U);
        for (const Edge& e : ans.matching.edges()) doomed_.push_back(e);
      }
    }
  }

  WorkloadKind kind_;
  std::size_t n_;
  std::size_t chunks_;
  WorkloadOptions opts_;
  Rng rng_;
  DynamicGraph graph_;
  EdgePool pool_;
  Trace trace_;
  std::uint64_t seq_ = 0;
  std::size_t chunk_size_ = 1;
  std::size_t target_ = 0;

  std::deque<Edge> window_;
  std::unique_ptr<Solver> solver_;
  std::deque<Edge> doomed_;
  std::size_t core_ = 0;
  std::vector<Edge> planted_;
  std::size_t next_plant_ = 0;
};

}  // namespace

Trace gen_workload(WorkloadKind kind, std::size_t n, std::size_t chunks, std::uint64_t seed,
                   const WorkloadOptions& options) {
  return Generator(kind, n, chunks, seed, options).run();
}

// ---------------------------------------------------------------------------

Instance complete_instance(std::size_t n) {
  Instance inst{DynamicGraph(n), {}};
  for (Vertex u = 0; u < n; ++u) {
    inst.query.push_back(u);
    for (Vertex v = u + 1; v < n; ++v) inst.graph.insert_edge(u, v);
  }
  return inst;
}

Instance planted_induced_instance(std::size_t n, std::size_t matched) {
  matched = std::min(matched, n) & ~std::size_t{1};
  Instance inst{DynamicGraph(n), {}};
  for (Vertex u = 0; u < matched; ++u) {
    inst.query.push_back(u);
    if (u % 2 == 0) inst.graph.insert_edge(u, u + 1);
    for (Vertex w = static_cast<Vertex>(matched); w < n; ++w) inst.graph.insert_edge(u, w);
  }
  return inst;
}

Instance random_instance(std::size_t n, double p, std::size_t matched, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "random-instance"));
  Instance inst{DynamicGraph(n), {}};
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u) {
    inst.query.push_back(u);
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) inst.graph.insert_edge(u, v);
    }
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  matched = std::min(matched, n) & ~std::size_t{1};
  for (std::size_t i = 0; i + 1 < matched; i += 2) {
    if (!inst.graph.has_edge(order[i], order[i + 1])) inst.graph.insert_edge(order[i], order[i + 1]);
  }
  return inst;
}

Instance clique_blocks_instance(std::size_t n, std::size_t block) {
  Instance inst{DynamicGraph(n), {}};
  for (Vertex u = 0; u < n; ++u) inst.query.push_back(u);
  if (block < 2) return inst;
  for (std::size_t b = 0; b + block <= n; b += block) {
    for (std::size_t i = b; i < b + block; ++i) {
      for (std::size_t j = i + 1; j < b + block; ++j) {
        inst.graph.insert_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return inst;
}

}  // namespace dynmatch::harness
