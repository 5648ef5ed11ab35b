#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "cfafl/cfa/log.hpp"
#include "cfafl/crypto/dh.hpp"
#include "cfafl/crypto/signature.hpp"
#include "cfafl/model/dataset.hpp"
#include "cfafl/model/model.hpp"
#include "cfafl/protocol/signed_update.hpp"

namespace cfafl::protocol {

/// Interception point between TRAIN_END and UPDATE_HASHED. Receives the
/// trained update and the round; returns the update that gets hashed and signed.
using PostTrainHook = std::function<model::ParameterVector(const model::ParameterVector&, std::uint32_t)>;

struct ClientRoundConfig {
  model::TrainingConfig train;
  bool encrypt = false;
};

/// Result of one client pass. `update` is empty when training failed; the
/// sealed report then ends early and fails trace verification.
struct ClientRoundOutcome {
  std::optional<SignedUpdate> update;
  cfa::AttestationReport report;
};

/// A federated participant: private data, signing key, DH key, and the
/// attested local-update pipeline.
class Client {
 public:
  Client(std::string id, model::Dataset data, model::ModelSpec spec, crypto::SignatureKeyPair signing,
         crypto::DhKeyPair dh, std::uint64_t seed);

  const std::string& id() const { return id_; }
  const model::Dataset& data() const { return data_; }
  std::uint64_t data_size() const { return data_.size(); }
  const crypto::PublicKey& signing_public() const { return signing_.pub; }
  const crypto::DhKeyPair& dh() const { return dh_; }

  /// Derives the transport key from this client's DH private value and the
  /// server's DH public value.
  void establish_session(const crypto::BigInt& server_dh_public, const crypto::DhParams& params);
  const std::optional<crypto::SymmetricKey>& session_key() const { return session_key_; }

  void set_post_train_hook(PostTrainHook hook) { post_train_ = std::move(hook); }

  /// Local training from `global`, then hash, sign and (optionally) encrypt,
  /// recording ROUND_START .. ROUND_END checkpoints and sealing them. The
  /// training seed is derived from the client seed and the round.
  ClientRoundOutcome client_round(const model::ParameterVector& global, std::uint32_t round,
                                  const ClientRoundConfig& cfg) const;

 private:
  std::string id_;
  model::Dataset data_;
  model::ModelSpec spec_;
  crypto::SignatureKeyPair signing_;
  crypto::DhKeyPair dh_;
  std::uint64_t seed_;
  std::optional<crypto::SymmetricKey> session_key_;
  PostTrainHook post_train_;
};

}  // namespace cfafl::protocol
