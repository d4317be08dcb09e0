#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/opportunistic.hpp"

namespace dynmatch::harness {

/// One benchmark run. Opportunistic rows leave updates at 0; engine rows
/// leave p_term, iteration and delta_in empty and report the smallest query
/// answer as answer_size.
struct BenchRow {
  std::string suite;
  std::string instance;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::uint64_t ops = 0;
  std::optional<double> p_term;
  std::optional<std::size_t> iteration;
  std::size_t answer_size = 0;
  std::optional<std::size_t> delta_in;
  std::size_t updates = 0;
};

inline constexpr const char* kBenchHeader =
    "suite,instance,n,seed,m,ops,p_term,iteration,answer_size,delta_in,updates,ops_per_update";
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct BenchOptions {
  OpportunisticParams opportunistic;
  std::size_t engine_chunks = 200;
  std::size_t engine_k = 1;
};

/**
   suite "opportunistic": per (n, seed) runs the matcher on the complete
   graph, the planted induced matching, a sparse random graph with a planted
   matching, and disjoint cliques of sizes 2, 4, 8, 16 (instance
   "blocks-<size>").
   suite "engine": per (n, seed) generates each workload kind and replays it
   through the engine. Throws InvalidKind for another suite name.
 */
std::vector<BenchRow> bench(const std::string& suite, const std::vector<std::size_t>& sizes,
                            const std::vector<std::uint64_t>& seeds,
                            const BenchOptions& options = {});

}  // namespace dynmatch::harness
