#include "dynmatch/ors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "dynmatch/matching.hpp"

namespace dynmatch {

namespace {

void check_eta(double eta) {
  if (!(eta > 0.0 && eta < 0.01)) {
    throw Error(Errc::EtaOutOfRange, "eta=" + std::to_string(eta) + " outside (0, 1/100)");
  }
}

std::size_t dyadic_class(std::size_t d) {
  std::size_t c = 1;
  while (2 * c <= d) c *= 2;
  return c;
}

// Backward pruning shared by the sampled and the deterministic extraction.
// `order` lists sequence positions in sequence order. A vertex is bad for
// M_i when `blocked` holds it; the caller decides which later matchings
// block (all sampled ones, or only kept ones).
struct PruneRule {
  bool block_with_original_vertices;  // true: all later picks block
  double bad_threshold;               // drop when bad count >= threshold
};

OrsCertificate prune(const DegreedMatchingSeq& seq, const std::vector<std::size_t>& order,
                     std::size_t r, const PruneRule& rule) {
  OrsCertificate cert;
  cert.n = seq.n;
  cert.r = r;
  if (r == 0) return cert;
  std::unordered_set<Vertex> blocked;
  std::vector<std::vector<Edge>> kept_reversed;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& M = seq.matchings[*it];
    std::size_t bad = 0;
    std::vector<Edge> clean;
    for (const Edge& e : M) {
      const bool bu = blocked.contains(e.u);
      const bool bv = blocked.contains(e.v);
      bad += static_cast<std::size_t>(bu) + static_cast<std::size_t>(bv);
      if (!bu && !bv) clean.push_back(e.normalized());
    }
    const bool dropped =
        static_cast<double>(bad) >= rule.bad_threshold || clean.size() < r;
    if (rule.block_with_original_vertices) {
      for (const Edge& e : M) {
        blocked.insert(e.u);
        blocked.insert(e.v);
      }
    }
    if (dropped) continue;
    clean.resize(r);
    if (!rule.block_with_original_vertices) {
      for (const Edge& e : clean) {
        blocked.insert(e.u);
        blocked.insert(e.v);
      }
    }
    kept_reversed.push_back(std::move(clean));
  }
  cert.matchings.assign(std::make_move_iterator(kept_reversed.rbegin()),
                        std::make_move_iterator(kept_reversed.rend()));
  return cert;
}

}  // namespace

bool validate_ors(const OrsCertificate& cert) {
  std::unordered_set<Edge, EdgeHash> all_edges;
  for (const auto& M : cert.matchings) {
    if (M.size() != cert.r) return false;
    std::unordered_set<Vertex> touched;
    for (const Edge& e : M) {
      if (e.u == e.v || e.u >= cert.n || e.v >= cert.n) return false;
      if (!touched.insert(e.u).second || !touched.insert(e.v).second) return false;
      if (!all_edges.insert(e.normalized()).second) return false;
    }
  }
  std::vector<Edge> suffix;
  for (auto it = cert.matchings.rbegin(); it != cert.matchings.rend(); ++it) {
    suffix.insert(suffix.end(), it->begin(), it->end());
    if (!is_induced_in(Matching(*it), suffix)) return false;
  }
  return true;
}

DyadicBucket dyadic_bucket(const DegreedMatchingSeq& seq) {
  if (seq.empty()) throw Error(Errc::EmptySequence, "no matchings to bucket");
  if (seq.degrees.size() != seq.matchings.size()) {
    throw Error(Errc::InvalidParams, "one degree witness per matching required");
  }
  std::map<std::size_t, double> weight;
  DyadicBucket out;
  for (std::size_t d : seq.degrees) {
    if (d == 0) throw Error(Errc::InvalidParams, "degree witnesses must be >= 1");
    weight[dyadic_class(d)] += 1.0 / static_cast<double>(d);
    out.total_weight += 1.0 / static_cast<double>(d);
  }
  for (const auto& [d, w] : weight) {
    if (w > out.weight) {
      out.weight = w;
      out.d_star = d;
    }
  }
  for (std::size_t i = 0; i < seq.degrees.size(); ++i) {
    if (dyadic_class(seq.degrees[i]) == out.d_star) out.indices.push_back(i);
  }
  return out;
}

std::size_t certificate_matching_size(std::size_t l, double eta) {
  return static_cast<std::size_t>(
      std::max<long long>(0, floor_tol((1.0 - eta) * static_cast<double>(l))));
}

ExtractionResult extract_ors_certificate(const DegreedMatchingSeq& seq, double eta, Rng& rng,
                                         std::size_t max_retries) {
  check_eta(eta);
  const DyadicBucket bucket = dyadic_bucket(seq);
  const std::size_t l = seq.matching_size();
  for (const auto& M : seq.matchings) {
    if (M.size() != l) throw Error(Errc::InvalidParams, "matchings must share one size");
  }
  const std::size_t r = certificate_matching_size(l, eta);
  if (r == 0) {
    throw Error(Errc::InvalidParams, "matching size " + std::to_string(l) +
                                         " leaves no edge after trimming");
  }

  ExtractionResult result;
  result.d_star = bucket.d_star;
  result.sample_probability = eta / (20.0 * static_cast<double>(bucket.d_star));
  result.required = static_cast<std::size_t>(std::max<long long>(
      1, ceil_tol(0.6 * result.sample_probability * static_cast<double>(bucket.indices.size()))));
  result.certificate.n = seq.n;
  result.certificate.r = r;

  const PruneRule rule{true, eta * static_cast<double>(l)};
  std::bernoulli_distribution keep(result.sample_probability);
  const std::size_t attempts = std::max<std::size_t>(1, max_retries);
  for (std::size_t a = 0; a < attempts; ++a) {
    ++result.attempts;
    std::vector<std::size_t> sample;
    for (std::size_t idx : bucket.indices) {
      if (keep(rng)) sample.push_back(idx);
    }
    OrsCertificate cert = prune(seq, sample, r, rule);
    if (cert.t() > result.certificate.t()) result.certificate = std::move(cert);
    if (result.certificate.t() >= result.required) return result;
  }
  result.retries_exhausted = true;
  return result;
}

OrsCertificate backward_prune_certificate(const DegreedMatchingSeq& seq, std::size_t r) {
  OrsCertificate cert;
  cert.n = seq.n;
  cert.r = r;
  if (r == 0) return cert;
  // Adjacency of the kept matchings.
  std::unordered_map<Vertex, std::vector<Vertex>> kept_adj;
  std::vector<std::vector<Edge>> kept_reversed;
  for (std::size_t i = seq.size(); i-- > 0;) {
    std::unordered_set<Vertex> chosen;
    std::vector<Edge> picked;
    auto sees = [&](Vertex x, Vertex a, Vertex b) {
      const auto it = kept_adj.find(x);
      if (it == kept_adj.end()) return false;
      for (Vertex w : it->second) {
        if (w == a || w == b || chosen.contains(w)) return true;
      }
      return false;
    };
    for (const Edge& e : seq.matchings[i]) {
      if (picked.size() == r) break;
      if (sees(e.u, e.u, e.v) || sees(e.v, e.u, e.v)) continue;
      picked.push_back(e.normalized());
      chosen.insert(e.u);
      chosen.insert(e.v);
    }
    if (picked.size() < r) continue;
    for (const Edge& e : picked) {
      kept_adj[e.u].push_back(e.v);
      kept_adj[e.v].push_back(e.u);
    }
    kept_reversed.push_back(std::move(picked));
  }
  cert.matchings.assign(std::make_move_iterator(kept_reversed.rbegin()),
                        std::make_move_iterator(kept_reversed.rend()));
  return cert;
}

std::vector<std::size_t> suffix_internal_degrees(const DegreedMatchingSeq& seq) {
  std::vector<std::size_t> out(seq.size(), 0);
  std::unordered_map<Vertex, std::vector<Vertex>> adj;
  for (std::size_t i = seq.size(); i-- > 0;) {
    for (const Edge& e : seq.matchings[i]) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::unordered_set<Vertex> inside;
    for (const Edge& e : seq.matchings[i]) {
      inside.insert(e.u);
      inside.insert(e.v);
    }
    for (Vertex v : inside) {
      std::size_t d = 0;
      for (Vertex w : adj[v]) d += inside.contains(w) ? 1 : 0;
      out[i] = std::max(out[i], d);
    }
  }
  return out;
}

std::size_t certificate_size_bound(const DegreedMatchingSeq& seq, double eta) {
  check_eta(eta);
  if (seq.empty()) throw Error(Errc::EmptySequence, "no matchings to bound");
  if (seq.n < 2) throw Error(Errc::InvalidParams, "need n >= 2 for the log factor");
  double total = 0.0;
  for (std::size_t d : seq.degrees) {
    if (d == 0) throw Error(Errc::InvalidParams, "degree witnesses must be >= 1");
    total += 1.0 / static_cast<double>(d);
  }
  const double bound = (eta * total) / (34.0 * std::log2(static_cast<double>(seq.n)));
  return static_cast<std::size_t>(std::max<long long>(0, ceil_tol(bound)));
}

namespace {

using nlohmann::json;

json matchings_to_json(const std::vector<std::vector<Edge>>& matchings) {
  json out = json::array();
  for (const auto& M : matchings) {
    json edges = json::array();
    for (const Edge& e : M) edges.push_back({e.u, e.v});
    out.push_back(std::move(edges));
  }
  return out;
}

std::vector<std::vector<Edge>> matchings_from_json(const json& doc) {
  std::vector<std::vector<Edge>> out;
  for (const json& M : doc.at("matchings")) {
    std::vector<Edge> edges;
    for (const json& e : M) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::InvalidParams, "edge must be [u, v]");
      edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>()});
    }
    out.push_back(std::move(edges));
  }
  return out;
}

template <typename F>
auto parse_document(const std::string& text, F&& body) {
  try {
    return body(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidParams, e.what());
  }
}

}  // namespace

std::string certificate_to_json(const OrsCertificate& cert) {
  json doc;
  doc["n"] = cert.n;
  doc["r"] = cert.r;
  doc["t"] = cert.t();
  doc["matchings"] = matchings_to_json(cert.matchings);
  return doc.dump();
}

OrsCertificate certificate_from_json(const std::string& text) {
  return parse_document(text, [](const json& doc) {
    OrsCertificate cert;
    cert.n = doc.at("n").get<std::size_t>();
    cert.r = doc.at("r").get<std::size_t>();
    cert.matchings = matchings_from_json(doc);
    return cert;
  });
}

std::string matching_log_to_json(const DegreedMatchingSeq& seq) {
  json doc;
  doc["n"] = seq.n;
  doc["matchings"] = matchings_to_json(seq.matchings);
  doc["degrees"] = seq.degrees;
  return doc.dump();
}

DegreedMatchingSeq matching_log_from_json(const std::string& text) {
  return parse_document(text, [](const json& doc) {
    DegreedMatchingSeq seq;
    seq.n = doc.at("n").get<std::size_t>();
    seq.matchings = matchings_from_json(doc);
    if (doc.contains("degrees")) {
      seq.degrees = doc.at("degrees").get<std::vector<std::size_t>>();
    } else {
      seq.degrees = suffix_internal_degrees(seq);
    }
    if (seq.degrees.size() != seq.matchings.size()) {
      throw Error(Errc::InvalidParams, "degrees and matchings differ in length");
    }
    return seq;
  });
}

}  // namespace dynmatch
