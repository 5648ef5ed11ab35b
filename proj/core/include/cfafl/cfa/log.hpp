#pragma once

#include <optional>
#include <vector>

#include "cfafl/cfa/checkpoint.hpp"
#include "cfafl/crypto/signature.hpp"

namespace cfafl::cfa {

struct LogEntry {
  Checkpoint checkpoint;
  crypto::Digest chain;

  bool operator==(const LogEntry&) const = default;
};

/// Hash-chained checkpoint trace. chain_0 = SHA-256(""), and entry k stores
/// chain_k = SHA-256(chain_{k-1} || encode(checkpoint_k)).
class CheckpointLog {
 public:
  CheckpointLog() = default;

  /// Wraps entries as received, without checking the chain.
  static CheckpointLog from_entries(std::vector<LogEntry> entries);

  static crypto::Digest genesis();
  static crypto::Digest link(const crypto::Digest& previous, const Checkpoint& cp);

  void append(Checkpoint cp);
  const std::vector<LogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// Chain digest of the last entry, or genesis for an empty log.
  crypto::Digest head() const;

  /// Index of the first entry whose stored digest does not recompute.
  std::optional<std::size_t> first_broken_link() const;

  bool operator==(const CheckpointLog&) const = default;

 private:
  std::vector<LogEntry> entries_;
};

/// Pure form of CheckpointLog::append.
CheckpointLog record_checkpoint(CheckpointLog log, Checkpoint cp);

/// A log sealed by its actor: signature over the final chain digest.
struct AttestationReport {
  CheckpointLog log;
  crypto::Digest final_digest;
  crypto::Signature signature;

  bool operator==(const AttestationReport&) const = default;
};

AttestationReport seal(const CheckpointLog& log, const crypto::PrivateKey& key);

/// u32 entry count, entries (checkpoint encoding + 32-byte chain digest),
/// 32-byte final digest, u16 signature length + signature.
Bytes serialize_report(const AttestationReport& report);
void serialize_report_to(ByteWriter& w, const AttestationReport& report);
AttestationReport parse_report(ByteReader& r);
AttestationReport parse_report(ByteView bytes);

}  // namespace cfafl::cfa
