#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfafl/cfa/graph.hpp"
#include "cfafl/cfa/log.hpp"
#include "cfafl/crypto/dh.hpp"
#include "cfafl/crypto/signature.hpp"
#include "cfafl/protocol/aggregate.hpp"
#include "cfafl/protocol/audit.hpp"
#include "cfafl/protocol/registry.hpp"
#include "cfafl/protocol/signed_update.hpp"
#include "cfafl/protocol/verdict.hpp"

namespace cfafl::protocol {

using AcceptedSet = std::set<std::pair<std::string, std::uint32_t>>;

/// Round-freshness state: the round being collected and the (client, round)
/// pairs already accepted.
struct Freshness {
  std::uint32_t current_round = 0;
  const AcceptedSet* accepted = nullptr;
};

/// An update recovered from a message (decrypted if needed), with its
/// canonical encoding.
struct OpenedUpdate {
  WeightedUpdate weighted;
  std::uint32_t round = 0;
  Bytes body;
};

struct VerificationOutcome {
  VerificationVerdict verdict;
  /// Present whenever the payload could be recovered, even if rejected later.
  std::optional<OpenedUpdate> opened;
};

/// Server-side checks on one message, in order; the first failure decides:
///   decrypt (when enveloped) -> identity -> digest -> signature ->
///   round freshness -> attestation (trace verification plus binding of the
///   trace's actor, round and measurements to this message).
VerificationOutcome server_verify(const KeyRegistry& registry, const SignedUpdate& msg,
                                  const cfa::ControlFlowGraph& graph, const crypto::SymmetricKey* shared_key,
                                  const Freshness& freshness, const model::Layout& layout);

class RoundAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServerConfig {
  /// When false, verdicts are still computed but every recoverable update is
  /// aggregated.
  bool enforce = true;
  crypto::DhParams dh = crypto::DhParams::modp2048();
  cfa::ControlFlowGraph client_graph = cfa::ControlFlowGraph::default_client();
  cfa::ControlFlowGraph server_graph = cfa::ControlFlowGraph::default_server();
};

struct Receipt {
  /// Sender id claimed by the message; empty if the frame did not decode.
  std::string claimed_id;
  VerificationVerdict verdict;
  bool queued = false;
};

struct RoundSummary {
  std::uint32_t round = 0;
  std::size_t aggregated = 0;
  bool model_updated = false;
  /// The aggregate was non-finite; the model step was skipped.
  bool non_finite_aborted = false;
  AuditLog audit;
  cfa::AttestationReport server_report;
};

/// Aggregation server: registry, per-client session keys, freshness tracking,
/// audit log, global model state, and its own attested round trace.
class Server {
 public:
  Server(model::ParameterVector initial, crypto::SignatureKeyPair signing, crypto::DhKeyPair dh,
         ServerConfig cfg);

  static constexpr const char* kActor = "server";

  /// Registers the identity and derives its session key. Throws DuplicateClient.
  void register_client(const std::string& client_id, crypto::PublicKey sig_pub, const crypto::BigInt& dh_pub);

  const KeyRegistry& registry() const { return registry_; }
  const crypto::BigInt& dh_public() const { return dh_.pub; }
  const crypto::PublicKey& signing_public() const { return signing_.pub; }
  const GlobalModelState& state() const { return state_; }
  const AuditLog& audit_log() const { return audit_; }
  const ServerConfig& config() const { return cfg_; }
  /// Round number messages must carry during the current collection window.
  std::uint32_t current_round() const { return state_.round + 1; }

  void begin_round();
  Receipt receive(ByteView wire);
  Receipt receive(const SignedUpdate& msg);
  /// Aggregates the queued updates, applies them and self-verifies the
  /// server trace. Throws RoundAborted when the server's own trace fails.
  RoundSummary finish_round();

 private:
  Receipt accept_or_reject(const SignedUpdate* msg, std::string claimed_id);
  void mark(cfa::Label label, crypto::Digest measurement = {});

  ServerConfig cfg_;
  crypto::SignatureKeyPair signing_;
  crypto::DhKeyPair dh_;
  KeyRegistry registry_;
  std::map<std::string, crypto::SymmetricKey, std::less<>> session_keys_;
  GlobalModelState state_;
  AcceptedSet accepted_;
  AuditLog audit_;

  bool in_round_ = false;
  cfa::CheckpointLog trace_;
  std::size_t received_ = 0;
  std::vector<OpenedUpdate> queue_;
  std::vector<AuditEntry> pending_audit_;
};

}  // namespace cfafl::protocol
