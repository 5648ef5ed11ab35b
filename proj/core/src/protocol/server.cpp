#include "cfafl/protocol/server.hpp"

#include "cfafl/crypto/cipher.hpp"
#include "cfafl/crypto/encoding.hpp"
#include "cfafl/protocol/client.hpp"

namespace cfafl::protocol {

std::string_view to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::Ok:
      return "ok";
    case VerdictReason::UnknownIdentity:
      return "unknown-identity";
    case VerdictReason::BadSignature:
      return "bad-signature";
    case VerdictReason::DigestMismatch:
      return "digest-mismatch";
    case VerdictReason::ReplayedRound:
      return "replayed-round";
    case VerdictReason::CfaHalt:
      return "cfa-halt";
    case VerdictReason::DecryptFailure:
      return "decrypt-failure";
  }
  return "unknown";
}

bool passed_integrity_checks(VerdictReason reason) {
  return reason == VerdictReason::Ok || reason == VerdictReason::ReplayedRound || reason == VerdictReason::CfaHalt;
}

bool replay_verification(const AuditEntry& entry) {
  if (!entry.public_key) return false;
  if (crypto::sha256(entry.body) != entry.digest) return false;
  return crypto::verify(entry.digest, entry.signature, *entry.public_key);
}

namespace {

// Binding between the attested trace and the message it travels with.
bool trace_matches_message(const cfa::AttestationReport& report, const SignedUpdate& msg) {
  bool saw_train_end = false;
  bool saw_hashed = false;
  for (const cfa::LogEntry& e : report.log.entries()) {
    if (e.checkpoint.actor != msg.client_id || e.checkpoint.round != msg.round) return false;
    if (e.checkpoint.label == cfa::Label::TrainEnd) {
      if (e.checkpoint.measurement != msg.digest) return false;
      saw_train_end = true;
    }
    if (e.checkpoint.label == cfa::Label::UpdateHashed) {
      if (e.checkpoint.measurement != msg.digest) return false;
      saw_hashed = true;
    }
  }
  return saw_train_end && saw_hashed;
}

}  // namespace

VerificationOutcome server_verify(const KeyRegistry& registry, const SignedUpdate& msg,
                                  const cfa::ControlFlowGraph& graph, const crypto::SymmetricKey* shared_key,
                                  const Freshness& freshness, const model::Layout& layout) {
  VerificationOutcome out;
  auto reject = [&](VerdictReason r) {
    out.verdict = VerificationVerdict::reject(r);
    return out;
  };

  OpenedUpdate opened;
  if (msg.encrypted()) {
    if (shared_key == nullptr) return reject(VerdictReason::UnknownIdentity);
    try {
      Bytes plain = crypto::decrypt(*shared_key, *msg.envelope);
      crypto::CanonicalUpdate inner = crypto::canonical_decode(plain);
      if (inner.client_id != msg.client_id || inner.round != msg.round || inner.data_size != msg.data_size ||
          inner.values.size() != layout.total()) {
        return reject(VerdictReason::DecryptFailure);
      }
      opened.weighted.update = model::ParameterVector(layout, std::move(inner.values));
      opened.body = std::move(plain);
    } catch (const crypto::IntegrityError&) {
      return reject(VerdictReason::DecryptFailure);
    } catch (const DecodeError&) {
      return reject(VerdictReason::DecryptFailure);
    } catch (const NonFiniteError&) {
      return reject(VerdictReason::DecryptFailure);
    }
  } else {
    opened.weighted.update = msg.update;
    opened.body = crypto::canonical_encode(msg.update, msg.round, msg.client_id, msg.data_size);
  }
  opened.weighted.client_id = msg.client_id;
  opened.weighted.data_size = msg.data_size;
  opened.round = msg.round;
  out.opened = std::move(opened);

  const RegistryEntry* entry = registry.find(msg.client_id);
  if (entry == nullptr) return reject(VerdictReason::UnknownIdentity);

  if (crypto::sha256(out.opened->body) != msg.digest) return reject(VerdictReason::DigestMismatch);

  if (!crypto::verify(msg.digest, msg.signature, entry->sig_pub)) return reject(VerdictReason::BadSignature);

  if (msg.round != freshness.current_round ||
      (freshness.accepted != nullptr && freshness.accepted->contains({msg.client_id, msg.round}))) {
    return reject(VerdictReason::ReplayedRound);
  }

  cfa::TraceVerdict trace = cfa::verify_trace(graph, msg.attestation, entry->sig_pub);
  if (!trace.ok) {
    out.verdict = VerificationVerdict{VerdictReason::CfaHalt, trace};
    return out;
  }
  if (!trace_matches_message(msg.attestation, msg)) return reject(VerdictReason::CfaHalt);

  out.verdict = VerificationVerdict::ok();
  return out;
}

Server::Server(model::ParameterVector initial, crypto::SignatureKeyPair signing, crypto::DhKeyPair dh,
               ServerConfig cfg)
    : cfg_(std::move(cfg)), signing_(std::move(signing)), dh_(std::move(dh)) {
  cfg_.dh.validate();
  state_.params = std::move(initial);
}

void Server::register_client(const std::string& client_id, crypto::PublicKey sig_pub, const crypto::BigInt& dh_pub) {
  // Derive first so a bad DH value leaves the registry untouched.
  crypto::SymmetricKey key = crypto::kdf(crypto::dh_shared(dh_.priv, dh_pub, cfg_.dh));
  registry_.register_client(client_id, std::move(sig_pub), dh_pub, current_round());
  session_keys_.emplace(client_id, key);
}

void Server::mark(cfa::Label label, crypto::Digest measurement) {
  trace_.append(cfa::Checkpoint{label, kActor, current_round(), measurement});
}

void Server::begin_round() {
  if (in_round_) throw std::logic_error("round already in progress");
  in_round_ = true;
  trace_ = cfa::CheckpointLog{};
  received_ = 0;
  queue_.clear();
  pending_audit_.clear();
  mark(cfa::Label::RoundStart);
}

Receipt Server::receive(ByteView wire) {
  if (!in_round_) throw std::logic_error("receive outside a round");
  std::optional<SignedUpdate> msg;
  try {
    msg = parse_signed_update(wire, state_.params.layout());
  } catch (const DecodeError&) {
    mark(cfa::Label::ServerReceived, crypto::sha256(wire));
    ++received_;
    return Receipt{"", VerificationVerdict::reject(VerdictReason::DigestMismatch), false};
  }
  mark(cfa::Label::ServerReceived, crypto::sha256(wire));
  ++received_;
  return accept_or_reject(&*msg, msg->client_id);
}

Receipt Server::receive(const SignedUpdate& msg) {
  if (!in_round_) throw std::logic_error("receive outside a round");
  mark(cfa::Label::ServerReceived, msg.digest);
  ++received_;
  return accept_or_reject(&msg, msg.client_id);
}

Receipt Server::accept_or_reject(const SignedUpdate* msg, std::string claimed_id) {
  auto key_it = session_keys_.find(msg->client_id);
  const crypto::SymmetricKey* key = key_it == session_keys_.end() ? nullptr : &key_it->second;
  VerificationOutcome outcome = server_verify(registry_, *msg, cfg_.client_graph, key,
                                              Freshness{current_round(), &accepted_}, state_.params.layout());

  Receipt receipt{std::move(claimed_id), outcome.verdict, false};
  if (outcome.verdict.accepted()) accepted_.insert({msg->client_id, msg->round});

  const bool take = outcome.verdict.accepted() || (!cfg_.enforce && outcome.opened.has_value());
  if (!take) return receipt;

  AuditEntry audit;
  audit.client_id = msg->client_id;
  audit.round = msg->round;
  audit.body = outcome.opened->body;
  audit.digest = msg->digest;
  audit.signature = msg->signature;
  if (const RegistryEntry* e = registry_.find(msg->client_id)) audit.public_key = e->sig_pub;
  pending_audit_.push_back(std::move(audit));
  queue_.push_back(std::move(*outcome.opened));
  receipt.queued = true;
  return receipt;
}

RoundSummary Server::finish_round() {
  if (!in_round_) throw std::logic_error("finish_round outside a round");
  if (received_ == 0) mark(cfa::Label::ServerReceived);  // empty collection window
  mark(cfa::Label::ServerVerified);

  RoundSummary summary;
  summary.round = current_round();
  std::vector<WeightedUpdate> batch;
  batch.reserve(queue_.size());
  for (OpenedUpdate& u : queue_) batch.push_back(std::move(u.weighted));
  summary.aggregated = batch.size();

  std::optional<model::ParameterVector> delta;
  try {
    delta = aggregate(batch);
  } catch (const NonFiniteError&) {
    summary.non_finite_aborted = true;
  }
  mark(cfa::Label::Aggregated, delta ? global_update_digest(*delta, current_round()) : crypto::Digest{});

  GlobalModelState next = state_;
  if (delta) {
    try {
      next = apply_global(state_, *delta);
      summary.model_updated = true;
    } catch (const NonFiniteError&) {
      summary.non_finite_aborted = true;
    }
  }
  if (!summary.model_updated) next.round = state_.round + 1;
  mark(cfa::Label::GlobalApplied);
  mark(cfa::Label::RoundEnd);

  cfa::AttestationReport report = cfa::seal(trace_, signing_.priv);
  const cfa::TraceVerdict self = cfa::verify_trace(cfg_.server_graph, report, signing_.pub);
  in_round_ = false;
  if (!self.ok) {
    throw RoundAborted("server trace failed attestation at entry " + std::to_string(self.index) + ": " +
                       std::string(cfa::to_string(self.reason)));
  }

  state_ = std::move(next);
  summary.audit = pending_audit_;
  audit_.insert(audit_.end(), pending_audit_.begin(), pending_audit_.end());
  summary.server_report = std::move(report);
  queue_.clear();
  pending_audit_.clear();
  return summary;
}

}  // namespace cfafl::protocol
