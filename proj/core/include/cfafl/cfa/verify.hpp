#pragma once

#include <cstddef>
#include <string_view>

#include "cfafl/cfa/graph.hpp"
#include "cfafl/cfa/log.hpp"

namespace cfafl::cfa {

enum class HaltReason { ChainTamper, BadSignature, IllegalTransition, WrongEndpoints };

std::string_view to_string(HaltReason reason);

/// Either ok, or halt at the first failing entry index with a reason.
struct TraceVerdict {
  bool ok = true;
  std::size_t index = 0;
  HaltReason reason = HaltReason::ChainTamper;

  static TraceVerdict pass() { return {}; }
  static TraceVerdict halt(std::size_t index, HaltReason reason) { return {false, index, reason}; }
  bool operator==(const TraceVerdict&) const = default;
};

/// Checks, in order: the hash chain recomputes (and matches the sealed final
/// digest), the seal signature verifies under `key`, every consecutive label
/// pair passes cfa_check, and the trace starts at graph.start() and ends at
/// graph.end(). The first failure decides the verdict.
TraceVerdict verify_trace(const ControlFlowGraph& graph, const AttestationReport& report,
                          const crypto::PublicKey& key);

}  // namespace cfafl::cfa
