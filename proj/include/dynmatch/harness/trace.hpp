#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dynmatch/common.hpp"
#include "dynmatch/engine.hpp"

namespace dynmatch::harness {

struct TraceHeader {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t chunks = 0;
  ProblemParams params;

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct TraceEvent {
  enum class Op { Insert, Delete, Empty, Query };
  std::uint64_t seq = 0;
  Op op = Op::Empty;
  Vertex u = 0;
  Vertex v = 0;
  std::vector<Vertex> vertices;  // query only

  bool is_update() const noexcept { return op != Op::Query; }
  UpdateEvent update() const;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

std::string_view op_name(TraceEvent::Op op) noexcept;

/// A header followed by events with strictly increasing seq.
struct Trace {
  TraceHeader header;
  std::vector<TraceEvent> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// JSON Lines: the header object on the first line, one event per line after.
void write_trace(std::ostream& out, const Trace& trace);
std::string serialize_trace(const Trace& trace);

/// Throws MalformedTrace with the offending line number.
Trace read_trace(std::istream& in);
Trace parse_trace(std::string_view text);

Trace load_trace(const std::string& path);
void save_trace(const std::string& path, const Trace& trace);

}  // namespace dynmatch::harness
