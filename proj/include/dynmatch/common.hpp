#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dynmatch {

using Vertex = std::uint32_t;
using Rng = std::mt19937_64;

/// Undirected edge. Most containers store it normalized (u < v).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge normalized() const noexcept {
    return u < v ? Edge{u, v} : Edge{v, u};
  }
  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    const Edge n = e.normalized();
    return std::hash<std::uint64_t>{}((std::uint64_t{n.u} << 32) | n.v);
  }
};

enum class Errc {
  DuplicateEdge,
  SelfLoop,
  VertexOutOfRange,
  MissingEdge,
  IndexOutOfRange,
  IsolatedVertex,
  SizeCapExceeded,
  PromiseViolation,
  EtaOutOfRange,
  EmptySequence,
  InvalidParams,
  ChunkSizeMismatch,
  QueryQuotaExceeded,
  EdgeLimitExceeded,
  BoostFailure,
  RevisionLimitExceeded,
  InvalidKind,
  MalformedTrace,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Rounding helpers that absorb floating error in products such as
// (1/12) * 12 * delta * n, so that mathematically integral values do not
// round one step too far.
inline long long ceil_tol(double x) {
  return static_cast<long long>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}
inline long long floor_tol(double x) {
  return static_cast<long long>(std::floor(x + 1e-9 * std::max(1.0, std::abs(x))));
}

/// Derives an independent 64-bit seed for a named component from a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept;

}  // namespace dynmatch
