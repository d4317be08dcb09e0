#include "dynmatch/harness/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dynmatch::harness {

using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "dynmatch-trace";
constexpr int kVersion = 1;

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(Errc::MalformedTrace, "line " + std::to_string(line) + ": " + what);
}

TraceEvent::Op parse_op(std::string_view s, std::size_t line) {
  if (s == "insert") return TraceEvent::Op::Insert;
  if (s == "delete") return TraceEvent::Op::Delete;
  if (s == "empty") return TraceEvent::Op::Empty;
  if (s == "query") return TraceEvent::Op::Query;
  malformed(line, "unknown op '" + std::string(s) + "'");
}

}  // namespace

std::string_view op_name(TraceEvent::Op op) noexcept {
  switch (op) {
    case TraceEvent::Op::Insert: return "insert";
    case TraceEvent::Op::Delete: return "delete";
    case TraceEvent::Op::Empty: return "empty";
    case TraceEvent::Op::Query: return "query";
  }
  return "?";
}

UpdateEvent TraceEvent::update() const {
  switch (op) {
    case Op::Insert: return UpdateEvent::insert(u, v);
    case Op::Delete: return UpdateEvent::erase(u, v);
    case Op::Empty: return UpdateEvent::empty();
    case Op::Query: break;
  }
  throw Error(Errc::MalformedTrace, "query event is not an update");
}

void write_trace(std::ostream& out, const Trace& trace) {
  const TraceHeader& h = trace.header;
  const ProblemParams& p = h.params;
  json header = {
      {"format", kFormat},
      {"version", kVersion},
      {"kind", h.kind},
      {"n", h.n},
      {"seed", h.seed},
      {"chunks", h.chunks},
      {"params",
       {{"m", p.m},
        {"q", p.q},
        {"gamma", p.gamma},
        {"delta", p.delta},
        {"alpha", p.alpha},
        {"k", p.k},
        {"beta", p.beta}}},
  };
  out << header.dump() << '\n';
  for (const TraceEvent& e : trace.events) {
    json line = {{"seq", e.seq}, {"op", op_name(e.op)}};
    if (e.op == TraceEvent::Op::Query) {
      line["vertices"] = e.vertices;
    } else if (e.op != TraceEvent::Op::Empty) {
      line["u"] = e.u;
      line["v"] = e.v;
    }
    out << line.dump() << '\n';
  }
}

std::string serialize_trace(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string text;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      malformed(line_no, e.what());
    }
    try {
      if (!have_header) {
        if (j.value("format", "") != kFormat) malformed(line_no, "missing trace header");
        if (j.value("version", 0) != kVersion) malformed(line_no, "unsupported version");
        TraceHeader& h = trace.header;
        h.kind = j.at("kind").get<std::string>();
        h.n = j.at("n").get<std::size_t>();
        h.seed = j.at("seed").get<std::uint64_t>();
        h.chunks = j.at("chunks").get<std::size_t>();
        const json& p = j.at("params");
        h.params.n = h.n;
        h.params.m = p.at("m").get<std::size_t>();
        h.params.q = p.at("q").get<std::size_t>();
        h.params.gamma = p.at("gamma").get<double>();
        h.params.delta = p.at("delta").get<double>();
        h.params.alpha = p.at("alpha").get<double>();
        h.params.k = p.at("k").get<std::size_t>();
        h.params.beta = p.at("beta").get<double>();
        have_header = true;
        continue;
      }
      TraceEvent e;
      e.seq = j.at("seq").get<std::uint64_t>();
      e.op = parse_op(j.at("op").get<std::string>(), line_no);
      if (e.op == TraceEvent::Op::Query) {
        e.vertices = j.at("vertices").get<std::vector<Vertex>>();
      } else if (e.op != TraceEvent::Op::Empty) {
        e.u = j.at("u").get<Vertex>();
        e.v = j.at("v").get<Vertex>();
      }
      if (!trace.events.empty() && e.seq <= trace.events.back().seq) {
        malformed(line_no, "seq must increase strictly");
      }
      trace.events.push_back(std::move(e));
    } catch (const json::exception& e) {
      malformed(line_no, e.what());
    }
  }
  if (!have_header) malformed(line_no, "empty input, no trace header");
  return trace;
}

Trace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_trace(in);
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedTrace, "cannot open " + path);
  return read_trace(in);
}

void save_trace(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::MalformedTrace, "cannot write " + path);
  write_trace(out, trace);
}

}  // namespace dynmatch::harness
