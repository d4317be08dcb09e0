#include "dynmatch/harness/bench.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <ostream>

#include "dynmatch/harness/runner.hpp"
#include "dynmatch/harness/workload.hpp"

namespace dynmatch::harness {

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.suite << ',' << r.instance << ',' << r.n << ',' << r.seed << ',' << r.m << ','
        << r.ops << ',';
    if (r.p_term) out << *r.p_term;
    out << ',';
    if (r.iteration) out << *r.iteration;
    out << ',' << r.answer_size << ',';
    if (r.delta_in) out << *r.delta_in;
    out << ',' << r.updates << ',';
    if (r.updates > 0) out << static_cast<double>(r.ops) / static_cast<double>(r.updates);
    out << '\n';
  }
}

namespace {

BenchRow run_opportunistic(const std::string& name, const Instance& inst, std::uint64_t seed,
                           const OpportunisticParams& params) {
  Rng rng(derive_seed(seed, "bench/" + name));
  const VertexSet U(inst.graph.vertex_count(), inst.query);
  const OpportunisticResult res = opportunistic_match(inst.graph, U, params, rng);
  BenchRow row;
  row.suite = "opportunistic";
  row.instance = name;
  row.n = inst.graph.vertex_count();
  row.seed = seed;
  row.m = inst.graph.edge_count();
  row.ops = res.ops;
  row.p_term = res.p_term;
  row.iteration = res.iteration;
  row.answer_size = res.matching.size();
  row.delta_in = max_internal_degree(inst.graph, res.matching);
  return row;
}

}  // namespace

std::vector<BenchRow> bench(const std::string& suite, const std::vector<std::size_t>& sizes,
                            const std::vector<std::uint64_t>& seeds, const BenchOptions& options) {
  std::vector<BenchRow> rows;
  if (suite == "opportunistic") {
    const OpportunisticParams& op = options.opportunistic;
    op.validate();
    for (std::size_t n : sizes) {
      const auto planted = static_cast<std::size_t>(
          2 * std::max<long long>(1, ceil_tol(op.delta * static_cast<double>(n))));
      const Instance kn = complete_instance(n);
      const Instance induced = planted_induced_instance(n, planted);
      for (std::uint64_t seed : seeds) {
        rows.push_back(run_opportunistic("complete", kn, seed, op));
        rows.push_back(run_opportunistic("planted-induced", induced, seed, op));
        rows.push_back(run_opportunistic(
            "random", random_instance(n, 8.0 / static_cast<double>(n), planted, seed), seed, op));
        for (std::size_t block : {2, 4, 8, 16}) {
          rows.push_back(run_opportunistic("blocks-" + std::to_string(block),
                                           clique_blocks_instance(n, block), seed, op));
        }
      }
    }
    return rows;
  }
  if (suite == "engine") {
    for (std::size_t n : sizes) {
      for (std::uint64_t seed : seeds) {
        for (WorkloadKind kind : all_kinds()) {
          WorkloadOptions wo;
          wo.params = default_workload_params(n, options.engine_k);
          const Trace trace = gen_workload(kind, n, options.engine_chunks, seed, wo);
          const RunResult res = run_trace(trace, RunConfig{});
          BenchRow row;
          row.suite = "engine";
          row.instance = std::string(kind_name(kind));
          row.n = n;
          row.seed = seed;
          row.m = wo.params.m;
          row.ops = res.total_ops;
          std::size_t smallest = 0;
          for (const MetricsRow& r : res.rows) {
            if (r.path == "update") continue;
            smallest = smallest == 0 ? r.answer_size : std::min(smallest, r.answer_size);
          }
          row.answer_size = smallest;
          row.updates = res.updates;
          rows.push_back(row);
        }
      }
    }
    return rows;
  }
  throw Error(Errc::InvalidKind, "unknown bench suite '" + suite + "'");
}

}  // namespace dynmatch::harness
