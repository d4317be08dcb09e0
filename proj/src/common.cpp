#include "dynmatch/common.hpp"

namespace dynmatch {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::MissingEdge: return "MissingEdge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::PromiseViolation: return "PromiseViolation";
    case Errc::EtaOutOfRange: return "EtaOutOfRange";
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::ChunkSizeMismatch: return "ChunkSizeMismatch";
    case Errc::QueryQuotaExceeded: return "QueryQuotaExceeded";
    case Errc::EdgeLimitExceeded: return "EdgeLimitExceeded";
    case Errc::BoostFailure: return "BoostFailure";
    case Errc::RevisionLimitExceeded: return "RevisionLimitExceeded";
    case Errc::InvalidKind: return "InvalidKind";
    case Errc::MalformedTrace: return "MalformedTrace";
  }
  return "Unknown";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept {
  // FNV-1a keeps label hashing stable across standard libraries.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(root ^ splitmix64(h));
}

}  // namespace dynmatch
