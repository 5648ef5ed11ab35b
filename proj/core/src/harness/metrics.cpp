#include "cfafl/harness/metrics.hpp"

namespace cfafl::harness {

namespace {
std::optional<double> percent(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

RoundMetrics compute_metrics(std::span<const Delivery> deliveries, std::span<const protocol::AuditEntry> audit) {
  RoundMetrics m;
  for (const Delivery& d : deliveries) {
    if (d.origin != Origin::Participant) continue;
    ++m.participant_received;
    if (protocol::passed_integrity_checks(d.receipt.verdict.reason)) ++m.participant_verified;
  }
  for (const protocol::AuditEntry& e : audit) {
    ++m.aggregated;
    if (e.public_key && crypto::verify(e.digest, e.signature, *e.public_key)) ++m.attributable;
    if (!protocol::replay_verification(e)) ++m.non_repudiation_incidents;
  }
  m.verification_rate = percent(m.participant_verified, m.participant_received);
  m.authentication_rate = percent(m.attributable, m.aggregated);
  return m;
}

RoundMetrics MetricsTable::totals() const {
  RoundMetrics t;
  for (const RoundReport& r : rounds) {
    t.participant_received += r.metrics.participant_received;
    t.participant_verified += r.metrics.participant_verified;
    t.aggregated += r.metrics.aggregated;
    t.attributable += r.metrics.attributable;
    t.non_repudiation_incidents += r.metrics.non_repudiation_incidents;
  }
  t.verification_rate = percent(t.participant_verified, t.participant_received);
  t.authentication_rate = percent(t.attributable, t.aggregated);
  return t;
}

double MetricsTable::total_duration_ms() const {
  double total = 0.0;
  for (const RoundReport& r : rounds) total += r.duration_ms;
  return total;
}

}  // namespace cfafl::harness
