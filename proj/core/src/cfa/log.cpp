#include "cfafl/cfa/log.hpp"

#include <limits>
#include <stdexcept>

namespace cfafl::cfa {

CheckpointLog CheckpointLog::from_entries(std::vector<LogEntry> entries) {
  CheckpointLog log;
  log.entries_ = std::move(entries);
  return log;
}

crypto::Digest CheckpointLog::genesis() {
  static const crypto::Digest kGenesis = crypto::sha256(ByteView{});
  return kGenesis;
}

crypto::Digest CheckpointLog::link(const crypto::Digest& previous, const Checkpoint& cp) {
  return crypto::sha256({previous.view(), encode(cp)});
}

void CheckpointLog::append(Checkpoint cp) {
  crypto::Digest chain = link(head(), cp);
  entries_.push_back(LogEntry{std::move(cp), chain});
}

crypto::Digest CheckpointLog::head() const { return entries_.empty() ? genesis() : entries_.back().chain; }

std::optional<std::size_t> CheckpointLog::first_broken_link() const {
  crypto::Digest previous = genesis();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (link(previous, entries_[i].checkpoint) != entries_[i].chain) return i;
    previous = entries_[i].chain;
  }
  return std::nullopt;
}

CheckpointLog record_checkpoint(CheckpointLog log, Checkpoint cp) {
  log.append(std::move(cp));
  return log;
}

AttestationReport seal(const CheckpointLog& log, const crypto::PrivateKey& key) {
  const crypto::Digest head = log.head();
  return AttestationReport{log, head, crypto::sign(head, key)};
}

void serialize_report_to(ByteWriter& w, const AttestationReport& report) {
  if (report.signature.bytes.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("signature too long to serialise");
  }
  w.u32(static_cast<std::uint32_t>(report.log.size()));
  for (const LogEntry& e : report.log.entries()) {
    encode_to(w, e.checkpoint);
    w.raw(e.chain.view());
  }
  w.raw(report.final_digest.view());
  w.u16(static_cast<std::uint16_t>(report.signature.bytes.size()));
  w.raw(report.signature.bytes);
}

Bytes serialize_report(const AttestationReport& report) {
  ByteWriter w;
  serialize_report_to(w, report);
  return std::move(w).take();
}

AttestationReport parse_report(ByteReader& r) {
  const std::uint32_t count = r.u32();
  // Smallest encoded entry is 1 + 4 + 2 + 32 + 32 bytes.
  if (count > r.remaining() / 71) throw DecodeError("entry count exceeds payload");
  std::vector<LogEntry> entries;
  entries.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Checkpoint cp = decode_checkpoint(r);
    entries.push_back(LogEntry{std::move(cp), crypto::Digest::from(r.raw(32))});
  }
  AttestationReport report;
  report.log = CheckpointLog::from_entries(std::move(entries));
  report.final_digest = crypto::Digest::from(r.raw(32));
  ByteView sig = r.raw(r.u16());
  report.signature.bytes.assign(sig.begin(), sig.end());
  return report;
}

AttestationReport parse_report(ByteView bytes) {
  ByteReader r(bytes);
  AttestationReport report = parse_report(r);
  r.expect_done();
  return report;
}

}  // namespace cfafl::cfa
