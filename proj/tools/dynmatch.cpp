#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dynmatch/driver.hpp"
#include "dynmatch/harness/bench.hpp"
#include "dynmatch/harness/runner.hpp"
#include "dynmatch/harness/trace.hpp"
#include "dynmatch/harness/workload.hpp"
#include "dynmatch/ors.hpp"

namespace dh = dynmatch::harness;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("dynmatch");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("DYNMATCH_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

// Writes to the file, or to stdout for "" and "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write(out);
}

struct RunOptions {
  std::string trace;
  std::string mode = "engine";
  std::size_t k = 0;
  double beta = 0.0;
  double epsilon = 0.05;
  std::string strategy = "exact";
  double beta0 = 1.0;
  double budget_constant = 32.0;
  double f_val = 0.1;
  double g_val = 1.0;
  std::uint64_t seed = 0;
  std::string metrics;
  std::string moved_log;
  bool skip_promise = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--trace", o.trace, "trace file (JSON Lines)")->required();
  cmd->add_option("--mode", o.mode, "engine or driver")
      ->check(CLI::IsMember({"engine", "driver"}));
  cmd->add_option("--k", o.k, "recursion depth (overrides the trace header)");
  cmd->add_option("--beta", o.beta, "engine beta (overrides the trace header)");
  cmd->add_option("--epsilon", o.epsilon, "driver additive error");
  cmd->add_option("--strategy", o.strategy, "driver boosting: exact, single-shot, stress");
  cmd->add_option("--beta0", o.beta0, "driver initial beta");
  cmd->add_option("--budget-constant", o.budget_constant, "per-batch op budget constant");
  cmd->add_option("--f", o.f_val, "driver query promise f");
  cmd->add_option("--g", o.g_val, "driver queries per chunk g");
  cmd->add_option("--seed", o.seed, "driver seed");
  cmd->add_option("--metrics", o.metrics, "metrics CSV output ('-' for stdout)");
  cmd->add_option("--moved-log", o.moved_log, "engine mode: JSON Lines of moved-matching logs");
  cmd->add_flag("--skip-promise", o.skip_promise, "verify: skip the exact promise check");
}

dh::RunConfig make_config(const RunOptions& o, const dh::Trace& trace,
                          std::ofstream* moved_out) {
  dh::RunConfig cfg;
  cfg.mode = o.mode == "driver" ? dh::RunMode::Driver : dh::RunMode::Engine;
  if (o.k > 0) cfg.k = o.k;
  if (o.beta > 0.0) cfg.beta = o.beta;
  cfg.budget_constant = o.budget_constant;
  cfg.check_promise = !o.skip_promise;
  cfg.driver.epsilon = o.epsilon;
  cfg.driver.relaxed_epsilon = o.epsilon >= 0.01;
  cfg.driver.k = o.k > 0 ? o.k : 1;
  cfg.driver.strategy = dynmatch::parse_strategy(o.strategy);
  cfg.driver.beta0 = o.beta0;
  cfg.driver.budget_constant = o.budget_constant;
  cfg.driver.f_val = o.f_val;
  cfg.driver.g_val = o.g_val;
  cfg.driver.seed = o.seed != 0 ? o.seed : trace.header.seed;
  if (moved_out != nullptr) {
    cfg.on_batch = [moved_out](std::size_t batch, const dynmatch::DegreedMatchingSeq& log) {
      spdlog::debug("batch {} moved {} matchings", batch, log.size());
      *moved_out << dynmatch::matching_log_to_json(log) << '\n';
    };
  }
  return cfg;
}

int cmd_gen(const std::string& kind, std::size_t n, std::size_t chunks, std::uint64_t seed,
            std::size_t k, const std::string& out) {
  dh::WorkloadOptions wo;
  wo.params = dh::default_workload_params(n, k);
  const dh::Trace trace = dh::gen_workload(dh::parse_kind(kind), n, chunks, seed, wo);
  spdlog::info("generated {} events", trace.events.size());
  with_output(out, [&](std::ostream& os) { dh::write_trace(os, trace); });
  return 0;
}

int cmd_run(const RunOptions& o, bool verify) {
  const dh::Trace trace = dh::load_trace(o.trace);
  std::ofstream moved;
  if (!o.moved_log.empty()) {
    moved.open(o.moved_log, std::ios::binary);
    if (!moved) throw std::runtime_error("cannot open " + o.moved_log);
  }
  const dh::RunConfig cfg = make_config(o, trace, o.moved_log.empty() ? nullptr : &moved);
  if (!verify) {
    const dh::RunResult res = dh::run_trace(trace, cfg);
    if (!o.metrics.empty()) {
      with_output(o.metrics, [&](std::ostream& os) { dh::write_metrics_csv(os, res.rows); });
    }
    std::cerr << "updates=" << res.updates << " chunks=" << res.chunks
              << " queries=" << res.queries << " total_ops=" << res.total_ops
              << " revisions=" << res.revisions << " beta=" << res.final_beta << '\n';
    return 0;
  }
  const dh::VerifyReport report = dh::verify_trace(trace, cfg);
  if (!o.metrics.empty()) {
    with_output(o.metrics, [&](std::ostream& os) { dh::write_metrics_csv(os, report.run.rows); });
  }
  for (const dh::Failure& f : report.failures) {
    std::cout << "FAIL seq=" << f.seq << ": " << f.what << '\n';
  }
  std::cout << (report.pass() ? "PASS" : "FAIL") << " events=" << report.events_checked
            << " chunks=" << report.chunks_checked << " queries=" << report.queries_checked
            << " batches=" << report.batches_checked
            << " failures=" << report.failures.size() << '\n';
  return report.pass() ? 0 : 1;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_bench(const std::string& suite, const std::string& sizes, const std::string& seeds,
              std::size_t chunks, const std::string& out) {
  std::vector<std::size_t> ns;
  for (const std::string& s : split_list(sizes)) ns.push_back(std::stoul(s));
  std::vector<std::uint64_t> ss;
  for (const std::string& s : split_list(seeds)) ss.push_back(std::stoull(s));
  dh::BenchOptions opts;
  opts.engine_chunks = chunks;
  const std::vector<dh::BenchRow> rows = dh::bench(suite, ns, ss, opts);
  with_output(out, [&](std::ostream& os) { dh::write_bench_csv(os, rows); });
  return 0;
}

int cmd_extract(const std::string& path, double eta, std::uint64_t seed, std::size_t retries,
                const std::string& method, const std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  dynmatch::Rng rng(dynmatch::derive_seed(seed, "extract-ors"));
  std::vector<std::string> certs;
  bool ok = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const dynmatch::DegreedMatchingSeq seq = dynmatch::matching_log_from_json(line);
    if (seq.empty() || dynmatch::certificate_matching_size(seq.matching_size(), eta) == 0) {
      spdlog::info("line {}: nothing to certify", line_no);
      continue;
    }
    dynmatch::OrsCertificate cert;
    if (method != "prune") {
      dynmatch::ExtractionResult res = dynmatch::extract_ors_certificate(seq, eta, rng, retries);
      spdlog::info("line {}: sampled t={} attempts={}", line_no, res.certificate.t(), res.attempts);
      if (res.retries_exhausted) spdlog::warn("line {}: retries exhausted", line_no);
      cert = std::move(res.certificate);
    }
    if (method != "sample") {
      dynmatch::OrsCertificate pruned = dynmatch::backward_prune_certificate(
          seq, dynmatch::certificate_matching_size(seq.matching_size(), eta));
      spdlog::info("line {}: pruned t={}", line_no, pruned.t());
      if (method == "prune" || pruned.t() > cert.t()) cert = std::move(pruned);
    }
    spdlog::info("line {}: t={} r={} bound={}", line_no, cert.t(), cert.r,
                 dynmatch::certificate_size_bound(seq, eta));
    if (!dynmatch::validate_ors(cert)) {
      spdlog::error("line {}: certificate failed validation", line_no);
      ok = false;
    }
    certs.push_back(dynmatch::certificate_to_json(cert));
  }
  with_output(out, [&](std::ostream& os) {
    for (const std::string& c : certs) os << c << '\n';
  });
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Dynamic approximate maximum matching toolkit"};
  app.require_subcommand(1);

  std::string kind;
  std::size_t n = 0;
  std::size_t chunks = 0;
  std::uint64_t seed = 0;
  std::size_t k = 1;
  std::string out;
  auto* gen = app.add_subcommand("gen", "generate a workload trace");
  gen->add_option("--kind", kind, "uniform-random, sliding-window, matched-edge-deleter, ors-stress")
      ->required();
  gen->add_option("--n", n, "vertex count")->required();
  gen->add_option("--chunks", chunks, "number of chunks")->required();
  gen->add_option("--seed", seed, "root seed");
  gen->add_option("--k", k, "recursion depth recorded in the header");
  gen->add_option("--out", out, "output file (default stdout)");

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "replay a trace and emit metrics");
  add_run_options(run, run_opts);
  RunOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "replay a trace against the exact oracles");
  add_run_options(verify, verify_opts);

  std::string suite;
  std::string sizes;
  std::string seeds = "1";
  std::size_t bench_chunks = 200;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite and write CSV");
  bench->add_option("--suite", suite, "opportunistic or engine")->required();
  bench->add_option("--sizes", sizes, "comma separated vertex counts")->required();
  bench->add_option("--seeds", seeds, "comma separated seeds");
  bench->add_option("--chunks", bench_chunks, "engine suite: chunks per trace");
  bench->add_option("--out", bench_out, "output file (default stdout)");

  std::string log_path;
  double eta = 1.0 / 128.0;
  std::uint64_t ors_seed = 0;
  std::string ors_method = "best";
  std::size_t retries = dynmatch::kDefaultMaxRetries;
  std::string ors_out;
  auto* extract = app.add_subcommand("extract-ors", "extract certificates from moved-matching logs");
  extract->add_option("--log", log_path, "JSON Lines of moved-matching logs")->required();
  extract->add_option("--eta", eta, "slack in (0, 0.01)");
  extract->add_option("--seed", ors_seed, "sampling seed");
  extract->add_option("--max-retries", retries, "sampling attempts");
  extract->add_option("--method", ors_method, "sample, prune, or best of both")
      ->check(CLI::IsMember({"sample", "prune", "best"}));
  extract->add_option("--out", ors_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(kind, n, chunks, seed, k, out);
    if (*run) return cmd_run(run_opts, false);
    if (*verify) return cmd_run(verify_opts, true);
    if (*bench) return cmd_bench(suite, sizes, seeds, bench_chunks, bench_out);
    if (*extract) return cmd_extract(log_path, eta, ors_seed, retries, ors_method, ors_out);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
