#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfafl/bytes.hpp"
#include "cfafl/crypto/hash.hpp"
#include "cfafl/crypto/signature.hpp"

namespace cfafl::protocol {

/// What the server keeps for every update it aggregated, enough to re-check
/// the contribution later without any other state.
struct AuditEntry {
  std::string client_id;
  std::uint32_t round = 0;
  /// Canonical encoding of the aggregated update.
  Bytes body;
  crypto::Digest digest;
  crypto::Signature signature;
  /// Registered key at acceptance time; empty for unregistered senders.
  std::optional<crypto::PublicKey> public_key;
};

/// Replays verification from the entry alone: SHA-256(body) == digest and the
/// signature verifies under the stored key.
bool replay_verification(const AuditEntry& entry);

using AuditLog = std::vector<AuditEntry>;

}  // namespace cfafl::protocol
