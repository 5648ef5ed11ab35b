#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfafl/protocol/audit.hpp"
#include "cfafl/protocol/server.hpp"

namespace cfafl::harness {

/// Where a delivered message came from.
enum class Origin {
  /// Produced by a registered client for the current round (possibly by a
  /// compromised insider, possibly altered in transit).
  Participant,
  Sybil,
  Replay,
};

struct Delivery {
  std::string sender;
  Origin origin = Origin::Participant;
  bool tampered = false;
  bool compromised = false;
  protocol::Receipt receipt;
};

struct RoundMetrics {
  /// 100 * participant messages passing decrypt/identity/digest/signature
  /// checks / participant messages received. nullopt when none were received.
  std::optional<double> verification_rate;
  /// 100 * aggregated updates attributable to a registered identity /
  /// aggregated updates. nullopt when nothing was aggregated.
  std::optional<double> authentication_rate;
  /// Aggregated updates whose stored (body, digest, signature, key) fail replay.
  std::size_t non_repudiation_incidents = 0;

  // Raw counts behind the rates, for run-level totals.
  std::size_t participant_received = 0;
  std::size_t participant_verified = 0;
  std::size_t aggregated = 0;
  std::size_t attributable = 0;
};

RoundMetrics compute_metrics(std::span<const Delivery> deliveries, std::span<const protocol::AuditEntry> audit);

struct RoundReport {
  std::uint32_t round = 0;
  std::size_t client_count = 0;
  std::vector<Delivery> deliveries;
  RoundMetrics metrics;
  bool model_updated = false;
  bool non_finite_aborted = false;
  /// Held-out accuracy of the global model after this round.
  double accuracy = 0.0;
  double duration_ms = 0.0;
};

struct MetricsTable {
  std::vector<RoundReport> rounds;

  double final_accuracy() const { return rounds.empty() ? 0.0 : rounds.back().accuracy; }
  /// Rates and incidents over all rounds pooled.
  RoundMetrics totals() const;
  double total_duration_ms() const;
};

}  // namespace cfafl::harness
