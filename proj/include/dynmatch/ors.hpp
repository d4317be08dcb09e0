#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dynmatch/common.hpp"

namespace dynmatch {

/// Ordered list of t matchings of size r on n vertices, pairwise
/// edge-disjoint, where each matching is induced in the union of itself and
/// every later matching.
struct OrsCertificate {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<std::vector<Edge>> matchings;

  std::size_t t() const noexcept { return matchings.size(); }
};

/// Ordered edge-disjoint matchings of a common size, each with a degree
/// witness d_i >= 1 bounding the degree of its vertices in the union of
/// itself and all later matchings.
struct DegreedMatchingSeq {
  std::size_t n = 0;
  std::vector<std::vector<Edge>> matchings;
  std::vector<std::size_t> degrees;

  std::size_t size() const noexcept { return matchings.size(); }
  bool empty() const noexcept { return matchings.empty(); }
  /// Common matching size; 0 when empty.
  std::size_t matching_size() const noexcept {
    return matchings.empty() ? 0 : matchings.front().size();
  }
};

bool validate_ors(const OrsCertificate& cert);

struct DyadicBucket {
  std::size_t d_star = 0;
  std::vector<std::size_t> indices;  // ascending positions in the sequence
  double weight = 0.0;               // sum of 1/d_i over the bucket
  double total_weight = 0.0;         // sum of 1/d_i over the whole sequence
};

/// Groups the matchings by d <= d_i < 2d for d = 1, 2, 4, ... and returns the
/// class of largest total 1/d_i (smallest d on ties). Throws EmptySequence.
DyadicBucket dyadic_bucket(const DegreedMatchingSeq& seq);

struct ExtractionResult {
  OrsCertificate certificate;
  bool retries_exhausted = false;
  std::size_t attempts = 0;
  std::size_t d_star = 0;
  double sample_probability = 0.0;
  std::size_t required = 0;  // survivors needed for success
};

inline constexpr std::size_t kDefaultMaxRetries = 64;

/**
   Turns a degreed matching sequence into an ORS certificate.

   Picks the dyadic class of d*, keeps each of its matchings independently
   with probability eta / (20 d*), and prunes the sample: a vertex of M_i is
   bad when a later sampled matching touches it, M_i is dropped when it has
   at least eta * l bad vertices, and survivors lose the edges at bad
   vertices and are cut to exactly floor((1 - eta) * l) edges. Repeats with
   fresh randomness until ceil(3/5 * p * |class|) matchings survive or
   max_retries attempts are spent; in the latter case the largest certificate
   seen is returned with retries_exhausted set. The output always validates.

   Throws EtaOutOfRange unless eta is in (0, 1/100), EmptySequence for an
   empty input, and InvalidParams when the sizes differ or are too small to
   leave r >= 1.
 */
ExtractionResult extract_ors_certificate(const DegreedMatchingSeq& seq, double eta, Rng& rng,
                                         std::size_t max_retries = kDefaultMaxRetries);

/// Deterministic variant without sampling: walks the sequence from the back
/// and greedily picks edges of each matching so that no edge already kept
/// joins two picked vertices. A matching is kept, cut to r edges, when r such
/// edges exist. Always validates.
OrsCertificate backward_prune_certificate(const DegreedMatchingSeq& seq, std::size_t r);

/// ceil(eta / (34 log2 n) * sum_i 1/d_i): the lower bound on the number of
/// size-floor((1-eta) l) induced matchings that the sequence certifies.
std::size_t certificate_size_bound(const DegreedMatchingSeq& seq, double eta);

/// For each i, the maximum internal degree of M_i inside M_i u ... u M_rho.
std::vector<std::size_t> suffix_internal_degrees(const DegreedMatchingSeq& seq);

/// floor((1 - eta) * l).
std::size_t certificate_matching_size(std::size_t l, double eta);

/// {"n": .., "r": .., "t": .., "matchings": [[[u, v], ...], ...]} in order.
std::string certificate_to_json(const OrsCertificate& cert);
OrsCertificate certificate_from_json(const std::string& text);

/// {"n": .., "matchings": [...], "degrees": [...]}. A missing "degrees"
/// array is filled with suffix_internal_degrees. Throws InvalidParams on a
/// malformed document.
std::string matching_log_to_json(const DegreedMatchingSeq& seq);
DegreedMatchingSeq matching_log_from_json(const std::string& text);

}  // namespace dynmatch
