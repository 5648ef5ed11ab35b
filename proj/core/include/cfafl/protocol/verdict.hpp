#pragma once

#include <optional>
#include <string_view>

#include "cfafl/cfa/verify.hpp"

namespace cfafl::protocol {

enum class VerdictReason {
  Ok,
  UnknownIdentity,
  BadSignature,
  DigestMismatch,
  ReplayedRound,
  CfaHalt,
  DecryptFailure,
};

std::string_view to_string(VerdictReason reason);

/// accepted iff reason == Ok.
struct VerificationVerdict {
  VerdictReason reason = VerdictReason::Ok;
  /// Set when the attestation step ran and failed.
  std::optional<cfa::TraceVerdict> trace;

  bool accepted() const { return reason == VerdictReason::Ok; }
  static VerificationVerdict ok() { return {}; }
  static VerificationVerdict reject(VerdictReason r) { return {r, std::nullopt}; }
};

/// True when the message got past decryption, identity, digest and signature
/// checks (the later freshness and attestation steps do not count).
bool passed_integrity_checks(VerdictReason reason);

}  // namespace cfafl::protocol
