#include "cfafl/cfa/verify.hpp"

namespace cfafl::cfa {

std::string_view to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::ChainTamper:
      return "chain-tamper";
    case HaltReason::BadSignature:
      return "bad-signature";
    case HaltReason::IllegalTransition:
      return "illegal-transition";
    case HaltReason::WrongEndpoints:
      return "wrong-endpoints";
  }
  return "unknown";
}

TraceVerdict verify_trace(const ControlFlowGraph& graph, const AttestationReport& report,
                          const crypto::PublicKey& key) {
  const auto& entries = report.log.entries();

  if (auto broken = report.log.first_broken_link()) return TraceVerdict::halt(*broken, HaltReason::ChainTamper);
  if (report.log.head() != report.final_digest) {
    return TraceVerdict::halt(entries.size(), HaltReason::ChainTamper);
  }

  if (!crypto::verify(report.final_digest, report.signature, key)) {
    return TraceVerdict::halt(entries.size(), HaltReason::BadSignature);
  }

  if (entries.empty()) return TraceVerdict::halt(0, HaltReason::WrongEndpoints);
  if (entries.front().checkpoint.label != graph.start()) return TraceVerdict::halt(0, HaltReason::WrongEndpoints);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (cfa_check(graph, entries[i - 1].checkpoint.label, entries[i].checkpoint.label) == 0) {
      return TraceVerdict::halt(i, HaltReason::IllegalTransition);
    }
  }
  if (entries.back().checkpoint.label != graph.end()) {
    return TraceVerdict::halt(entries.size() - 1, HaltReason::WrongEndpoints);
  }
  return TraceVerdict::pass();
}

}  // namespace cfafl::cfa
