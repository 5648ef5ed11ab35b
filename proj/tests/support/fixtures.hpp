#pragma once

#include <string>

#include "cfafl/crypto/dh.hpp"
#include "cfafl/crypto/signature.hpp"
#include "cfafl/model/model.hpp"
#include "cfafl/protocol/client.hpp"
#include "cfafl/protocol/server.hpp"

namespace fixtures {

inline constexpr unsigned kTestKeyBits = 1024;

inline cfafl::model::ModelSpec small_spec() {
  cfafl::model::ModelSpec spec;
  spec.num_features = 4;
  spec.num_classes = 3;
  return spec;
}

inline cfafl::crypto::SignatureKeyPair keys(std::uint64_t seed) {
  return cfafl::crypto::keygen_signature(cfafl::crypto::kRsaSha256, kTestKeyBits, seed);
}

inline cfafl::protocol::ServerConfig server_config(bool enforce) {
  cfafl::protocol::ServerConfig cfg;
  cfg.enforce = enforce;
  return cfg;
}

/// Server plus `n` registered clients with synthetic shards, toy-sized keys.
struct Setup {
  cfafl::model::ModelSpec spec = small_spec();
  cfafl::crypto::DhParams dh = cfafl::crypto::DhParams::modp2048();
  std::vector<cfafl::protocol::Client> clients;
  cfafl::protocol::Server server;

  Setup(std::size_t n, bool enforce = true, std::size_t per_client = 40)
      : server(cfafl::model::ParameterVector::zeros(cfafl::model::layout_for(small_spec())), keys(999),
               cfafl::crypto::dh_keygen(cfafl::crypto::DhParams::modp2048(), 998),
               server_config(enforce)) {
    auto shards = cfafl::model::generate_synthetic(n, per_client, spec.num_features, spec.num_classes, 4.0, 7);
    for (std::size_t i = 0; i < n; ++i) {
      cfafl::protocol::Client c("client-" + std::to_string(i), shards[i], spec, keys(100 + i),
                                cfafl::crypto::dh_keygen(dh, 200 + i), 300 + i);
      server.register_client(c.id(), c.signing_public(), c.dh().pub);
      c.establish_session(server.dh_public(), dh);
      clients.push_back(std::move(c));
    }
  }

  cfafl::protocol::ClientRoundConfig round_config(bool encrypt = true) const {
    cfafl::protocol::ClientRoundConfig cfg;
    cfg.train.learning_rate = 0.1;
    cfg.train.epochs = 2;
    cfg.encrypt = encrypt;
    return cfg;
  }

  cfafl::protocol::SignedUpdate produce(std::size_t i, bool encrypt = true) const {
    return *clients[i].client_round(server.state().params, server.current_round(), round_config(encrypt)).update;
  }
};

}  // namespace fixtures
