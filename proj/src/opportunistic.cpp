#include "dynmatch/opportunistic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dynmatch {

void OpportunisticParams::validate() const {
  const auto in_range = [](double x) { return x > 0.0 && x < 1.0 / 6.0; };
  if (!in_range(gamma) || !in_range(delta)) {
    throw Error(Errc::InvalidParams, "opportunistic gamma=" + std::to_string(gamma) +
                                         " delta=" + std::to_string(delta) +
                                         " must both lie in (0, 1/6)");
  }
}

std::size_t OpportunisticParams::rounds() const {
  return static_cast<std::size_t>(std::max<long long>(1, ceil_tol(1.0 / (3.0 * gamma))));
}

std::size_t OpportunisticParams::target(std::size_t n) const {
  return static_cast<std::size_t>(
      std::max<long long>(1, ceil_tol(gamma * delta * static_cast<double>(n))));
}

double OpportunisticParams::probability(std::size_t i, std::size_t n) const {
  if (i >= rounds() || n <= 1) return 1.0;
  const double nd = static_cast<double>(n);
  return std::min(1.0, std::pow(nd, 3.0 * gamma * static_cast<double>(i)) / nd);
}

void BinomialNeighborSampler::sample(const DynamicGraph& g, Vertex v, double p,
                                     std::vector<Vertex>& out, std::uint64_t& ops) {
  const auto nbrs = g.neighbors(v);
  const std::size_t deg = nbrs.size();
  ++ops;
  if (deg == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    out.insert(out.end(), nbrs.begin(), nbrs.end());
    ops += deg;
    return;
  }
  std::binomial_distribution<std::size_t> count(deg, p);
  const std::size_t k = count(rng_);
  if (k == 0) return;
  if (mark_.size() < deg) mark_.resize(std::max(deg, 2 * mark_.size()), 0);

  // Distinct slots by rejection; for k > deg/2 draw the complement instead so
  // the expected number of draws stays O(k).
  const bool complement = 2 * k > deg;
  const std::size_t draws = complement ? deg - k : k;
  std::uniform_int_distribution<std::uint32_t> slot(0, static_cast<std::uint32_t>(deg - 1));
  picked_.clear();
  while (picked_.size() < draws) {
    const std::uint32_t s = slot(rng_);
    ++ops;
    if (mark_[s]) continue;
    mark_[s] = 1;
    picked_.push_back(s);
  }
  if (complement) {
    for (std::size_t s = 0; s < deg; ++s) {
      if (!mark_[s]) out.push_back(nbrs[s]);
    }
    ops += deg;
  } else {
    for (std::uint32_t s : picked_) out.push_back(nbrs[s]);
    ops += k;
  }
  for (std::uint32_t s : picked_) mark_[s] = 0;
}

std::vector<Vertex> sample_neighborhood(const DynamicGraph& g, Vertex v, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(Errc::InvalidParams, "sampling probability must lie in [0,1]");
  }
  BinomialNeighborSampler sampler(rng);
  std::vector<Vertex> out;
  std::uint64_t ops = 0;
  sampler.sample(g, v, p, out, ops);
  return out;
}

OpportunisticResult opportunistic_match(const DynamicGraph& g, const VertexSet& U,
                                        const OpportunisticParams& params,
                                        NeighborSampler& sampler) {
  params.validate();
  const std::size_t n = g.vertex_count();
  const std::size_t target = params.target(n);
  const std::size_t rounds = params.rounds();

  OpportunisticResult result;
  std::vector<Vertex> candidates(U.members().begin(), U.members().end());
  std::vector<char> in_x(n, 0);
  std::vector<char> matched(n, 0);
  for (Vertex v : candidates) {
    if (v >= n) {
      throw Error(Errc::VertexOutOfRange, "query vertex " + std::to_string(v));
    }
    in_x[v] = 1;
  }
  result.ops += candidates.size();

  std::vector<Vertex> sampled;
  for (std::size_t i = 1; i <= rounds; ++i) {
    const double p = params.probability(i, n);
    Matching M;
    for (Vertex v : candidates) {
      ++result.ops;
      if (matched[v]) continue;
      sampled.clear();
      sampler.sample(g, v, p, sampled, result.ops);
      for (Vertex w : sampled) {
        ++result.ops;
        if (w != v && in_x[w] && !matched[w]) {
          M.add(v, w);
          matched[v] = matched[w] = 1;
          break;
        }
      }
    }

    RoundStats stats{p, candidates.size(), M.size(), std::nullopt};
    if (M.size() >= target) {
      result.rounds.push_back(stats);
      result.matching = std::move(M);
      result.iteration = i;
      result.p_term = p;
      return result;
    }

    std::erase_if(candidates, [&](Vertex v) {
      if (!matched[v]) return false;
      in_x[v] = 0;
      return true;
    });
    result.ops += stats.candidates;

    if (params.measure_residual) {
      std::size_t worst = 0;
      for (Vertex v : candidates) {
        std::size_t d = 0;
        for (Vertex w : g.neighbors(v)) d += in_x[w] ? 1 : 0;
        worst = std::max(worst, d);
      }
      stats.residual_max_degree = worst;
    }
    result.rounds.push_back(stats);
  }
  throw Error(Errc::PromiseViolation,
              "no round reached " + std::to_string(target) +
                  " edges; the query set does not carry the promised matching");
}

OpportunisticResult opportunistic_match(const DynamicGraph& g, const VertexSet& U,
                                        const OpportunisticParams& params, Rng& rng) {
  BinomialNeighborSampler sampler(rng);
  return opportunistic_match(g, U, params, sampler);
}

}  // namespace dynmatch
