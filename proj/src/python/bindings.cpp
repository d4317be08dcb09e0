#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <utility>

#include "dynmatch/driver.hpp"
#include "dynmatch/engine.hpp"
#include "dynmatch/graph_store.hpp"
#include "dynmatch/harness/runner.hpp"
#include "dynmatch/harness/trace.hpp"
#include "dynmatch/harness/workload.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/opportunistic.hpp"
#include "dynmatch/ors.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace dynmatch;

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

EdgeList to_pairs(std::span<const Edge> edges) {
  EdgeList out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

std::vector<Edge> to_edges(const EdgeList& pairs) {
  std::vector<Edge> out;
  out.reserve(pairs.size());
  for (const auto& [u, v] : pairs) out.push_back(Edge{u, v});
  return out;
}

VertexSet vertex_set(const DynamicGraph& g, const std::optional<std::vector<Vertex>>& U) {
  return U ? VertexSet(g.vertex_count(), *U) : VertexSet::all(g.vertex_count());
}

DegreedMatchingSeq make_seq(std::size_t n, const std::vector<EdgeList>& matchings,
                            const std::optional<std::vector<std::size_t>>& degrees) {
  DegreedMatchingSeq seq;
  seq.n = n;
  for (const EdgeList& M : matchings) seq.matchings.push_back(to_edges(M));
  seq.degrees = degrees ? *degrees : suffix_internal_degrees(seq);
  return seq;
}

py::dict certificate_dict(const OrsCertificate& cert) {
  std::vector<EdgeList> ms;
  for (const auto& M : cert.matchings) ms.push_back(to_pairs(M));
  return py::dict("n"_a = cert.n, "r"_a = cert.r, "t"_a = cert.t(), "matchings"_a = ms);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamic approximate maximum matching core";

  py::register_exception<Error>(m, "DynmatchError", PyExc_ValueError);

  py::class_<DynamicGraph>(m, "Graph")
      .def(py::init<std::size_t>(), "n"_a)
      .def_property_readonly("n", &DynamicGraph::vertex_count)
      .def_property_readonly("m", &DynamicGraph::edge_count)
      .def("degree", &DynamicGraph::degree)
      .def("has_edge", &DynamicGraph::has_edge)
      .def("insert", &DynamicGraph::insert_edge, "u"_a, "v"_a)
      .def("delete", &DynamicGraph::delete_edge, "u"_a, "v"_a)
      .def("neighbor_at", &DynamicGraph::neighbor_at, "u"_a, "i"_a)
      .def("neighbors",
           [](const DynamicGraph& g, Vertex u) {
             const auto span = g.neighbors(u);
             return std::vector<Vertex>(span.begin(), span.end());
           })
      .def("capacity", &DynamicGraph::capacity)
      .def("edges", [](const DynamicGraph& g) { return to_pairs(g.edges()); });

  m.def(
      "greedy_matching",
      [](const DynamicGraph& g, std::optional<std::vector<Vertex>> U) {
        return to_pairs(greedy_matching(g, vertex_set(g, U)).edges());
      },
      "graph"_a, "U"_a = py::none());
  m.def(
      "exact_max_matching",
      [](const DynamicGraph& g, std::optional<std::vector<Vertex>> U, std::size_t cap) {
        return to_pairs(exact_max_matching(g, vertex_set(g, U), cap).edges());
      },
      "graph"_a, "U"_a = py::none(), "cap"_a = kDefaultExactCap);
  m.def(
      "opportunistic_match",
      [](const DynamicGraph& g, std::optional<std::vector<Vertex>> U, double gamma, double delta,
         std::uint64_t seed) {
        OpportunisticParams params;
        params.gamma = gamma;
        params.delta = delta;
        Rng rng(seed);
        const OpportunisticResult res = opportunistic_match(g, vertex_set(g, U), params, rng);
        return py::dict("matching"_a = to_pairs(res.matching.edges()),
                        "iteration"_a = res.iteration, "p_term"_a = res.p_term,
                        "ops"_a = res.ops);
      },
      "graph"_a, "U"_a = py::none(), "gamma"_a = 1.0 / 12.0, "delta"_a = 1.0 / 7.0,
      "seed"_a = 0);

  py::class_<ProblemParams>(m, "ProblemParams")
      .def(py::init([](std::size_t n, std::size_t m_, std::size_t q, double gamma, double delta,
                       double alpha, std::size_t k, double beta) {
             ProblemParams p{};
             p.n = n;
             p.m = m_;
             p.q = q;
             p.gamma = gamma;
             p.delta = delta;
             p.alpha = alpha;
             p.k = k;
             p.beta = beta;
             return p;
           }),
           "n"_a, "m"_a, "q"_a = 1, "gamma"_a, "delta"_a, "alpha"_a, "k"_a = 1, "beta"_a = 1.0)
      .def_readwrite("n", &ProblemParams::n)
      .def_readwrite("m", &ProblemParams::m)
      .def_readwrite("q", &ProblemParams::q)
      .def_readwrite("gamma", &ProblemParams::gamma)
      .def_readwrite("delta", &ProblemParams::delta)
      .def_readwrite("alpha", &ProblemParams::alpha)
      .def_readwrite("k", &ProblemParams::k)
      .def_readwrite("beta", &ProblemParams::beta)
      .def("validate", &ProblemParams::validate)
      .def("chunk_size", &ProblemParams::chunk_size)
      .def("answer_size", &ProblemParams::answer_size)
      .def("__eq__", [](const ProblemParams& a, const ProblemParams& b) { return a == b; });

  m.def("batch_length", &batch_length, "params"_a);
  m.def("derive_child_params", &derive_child_params, "params"_a, "t"_a);

  py::class_<Solver>(m, "Solver")
      .def(py::init([](const ProblemParams& p, std::uint64_t seed) { return Solver(p, seed); }),
           "params"_a, "seed"_a = 0)
      .def(
          "apply_chunk",
          [](Solver& s, const std::vector<std::tuple<std::string, Vertex, Vertex>>& chunk) {
            std::vector<UpdateEvent> events;
            for (const auto& [op, u, v] : chunk) {
              if (op == "insert") {
                events.push_back(UpdateEvent::insert(u, v));
              } else if (op == "delete") {
                events.push_back(UpdateEvent::erase(u, v));
              } else if (op == "empty") {
                events.push_back(UpdateEvent::empty());
              } else {
                throw Error(Errc::InvalidParams, "unknown update op '" + op + "'");
              }
            }
            s.apply_chunk(events);
          },
          "chunk"_a)
      .def(
          "answer_query",
          [](Solver& s, const std::vector<Vertex>& U) {
            const QueryAnswer ans = s.answer_query(VertexSet(s.params().n, U));
            std::vector<std::string> route;
            for (QueryPath p : ans.route) route.emplace_back(query_path_name(p));
            return py::dict("matching"_a = to_pairs(ans.matching.edges()), "route"_a = route,
                            "delta_in"_a = ans.delta_in, "ops"_a = ans.ops);
          },
          "U"_a)
      .def_property_readonly("edge_count", &Solver::edge_count)
      .def_property_readonly("batch_index", &Solver::batch_index)
      .def_property_readonly("total_ops", &Solver::total_ops)
      .def("edges", [](const Solver& s) { return to_pairs(s.edges()); })
      .def("check_invariants", [](const Solver& s) { return s.check_invariants(); });

  m.def(
      "extract_ors_certificate",
      [](std::size_t n, const std::vector<EdgeList>& matchings,
         std::optional<std::vector<std::size_t>> degrees, double eta, std::uint64_t seed) {
        Rng rng(seed);
        const ExtractionResult res =
            extract_ors_certificate(make_seq(n, matchings, degrees), eta, rng);
        py::dict out = certificate_dict(res.certificate);
        out["retries_exhausted"] = res.retries_exhausted;
        out["attempts"] = res.attempts;
        return out;
      },
      "n"_a, "matchings"_a, "degrees"_a = py::none(), "eta"_a = 1.0 / 128.0, "seed"_a = 0);
  m.def(
      "validate_ors",
      [](std::size_t n, std::size_t r, const std::vector<EdgeList>& matchings) {
        OrsCertificate cert;
        cert.n = n;
        cert.r = r;
        for (const EdgeList& M : matchings) cert.matchings.push_back(to_edges(M));
        return validate_ors(cert);
      },
      "n"_a, "r"_a, "matchings"_a);
  m.def(
      "certificate_size_bound",
      [](std::size_t n, const std::vector<EdgeList>& matchings,
         std::optional<std::vector<std::size_t>> degrees, double eta) {
        return certificate_size_bound(make_seq(n, matchings, degrees), eta);
      },
      "n"_a, "matchings"_a, "degrees"_a = py::none(), "eta"_a = 1.0 / 128.0);

  m.def(
      "gen_workload",
      [](const std::string& kind, std::size_t n, std::size_t chunks, std::uint64_t seed,
         std::size_t k) {
        harness::WorkloadOptions wo;
        wo.params = harness::default_workload_params(n, k);
        return harness::serialize_trace(
            harness::gen_workload(harness::parse_kind(kind), n, chunks, seed, wo));
      },
      "kind"_a, "n"_a, "chunks"_a, "seed"_a = 0, "k"_a = 1,
      "Generated trace as JSON Lines text.");
  m.def(
      "verify_trace",
      [](const std::string& text, std::optional<std::size_t> k) {
        harness::RunConfig cfg;
        cfg.k = k;
        const harness::VerifyReport report = harness::verify_trace(harness::parse_trace(text), cfg);
        std::vector<std::pair<std::uint64_t, std::string>> failures;
        for (const auto& f : report.failures) failures.emplace_back(f.seq, f.what);
        return py::dict("passed"_a = report.pass(), "failures"_a = failures,
                        "queries"_a = report.queries_checked, "chunks"_a = report.chunks_checked,
                        "answer_sizes"_a = report.answer_sizes);
      },
      "trace"_a, "k"_a = py::none());
  m.def(
      "run_metrics_csv",
      [](const std::string& text) {
        const harness::RunResult res =
            harness::run_trace(harness::parse_trace(text), harness::RunConfig{});
        std::ostringstream out;
        harness::write_metrics_csv(out, res.rows);
        return out.str();
      },
      "trace"_a);
}
