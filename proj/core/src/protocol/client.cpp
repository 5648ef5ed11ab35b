#include "cfafl/protocol/client.hpp"

#include "cfafl/crypto/encoding.hpp"
#include "cfafl/rng.hpp"

namespace cfafl::protocol {

Client::Client(std::string id, model::Dataset data, model::ModelSpec spec, crypto::SignatureKeyPair signing,
               crypto::DhKeyPair dh, std::uint64_t seed)
    : id_(std::move(id)),
      data_(std::move(data)),
      spec_(spec),
      signing_(std::move(signing)),
      dh_(std::move(dh)),
      seed_(seed) {
  if (data_.empty()) throw std::invalid_argument("client '" + id_ + "' has no data");
}

void Client::establish_session(const crypto::BigInt& server_dh_public, const crypto::DhParams& params) {
  session_key_ = crypto::kdf(crypto::dh_shared(dh_.priv, server_dh_public, params));
}

ClientRoundOutcome Client::client_round(const model::ParameterVector& global, std::uint32_t round,
                                        const ClientRoundConfig& cfg) const {
  cfa::CheckpointLog log;
  auto mark = [&](cfa::Label label, crypto::Digest measurement = {}) {
    log.append(cfa::Checkpoint{label, id_, round, measurement});
  };

  mark(cfa::Label::RoundStart);
  mark(cfa::Label::TrainBegin);

  model::TrainingConfig train = cfg.train;
  train.seed = derive_seed(seed_, "train", round);
  std::optional<model::TrainResult> trained;
  try {
    trained = model::local_train(model::Model(spec_, global), data_, train);
  } catch (const model::TrainingError&) {
    return ClientRoundOutcome{std::nullopt, cfa::seal(log, signing_.priv)};
  }

  mark(cfa::Label::TrainEnd, update_digest(trained->update, round, id_, data_size()));

  model::ParameterVector update = post_train_ ? post_train_(trained->update, round) : trained->update;

  const Bytes body = crypto::canonical_encode(update, round, id_, data_size());
  const crypto::Digest digest = crypto::sha256(body);
  mark(cfa::Label::UpdateHashed, digest);

  crypto::Signature signature = crypto::sign(digest, signing_.priv);
  mark(cfa::Label::UpdateSigned);

  SignedUpdate msg;
  msg.client_id = id_;
  msg.round = round;
  msg.data_size = data_size();
  msg.digest = digest;
  msg.signature = std::move(signature);
  if (cfg.encrypt) {
    if (!session_key_) throw std::logic_error("client '" + id_ + "' has no session key");
    msg.envelope = crypto::encrypt(*session_key_, crypto::derive_nonce(id_, round), body);
  } else {
    msg.update = std::move(update);
  }
  mark(cfa::Label::UpdateSent);
  mark(cfa::Label::RoundEnd);

  msg.attestation = cfa::seal(log, signing_.priv);
  ClientRoundOutcome out{std::nullopt, msg.attestation};
  out.update = std::move(msg);
  return out;
}

}  // namespace cfafl::protocol
