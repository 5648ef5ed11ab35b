#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfafl/adversary/attacks.hpp"
#include "cfafl/cfa/graph.hpp"
#include "cfafl/crypto/dh.hpp"
#include "cfafl/crypto/signature.hpp"
#include "cfafl/harness/metrics.hpp"
#include "cfafl/model/dataset.hpp"
#include "cfafl/model/model.hpp"
#include "cfafl/protocol/client.hpp"
#include "cfafl/protocol/server.hpp"

namespace cfafl::protocol {

struct FederationConfig {
  model::ModelSpec spec;
  model::TrainingConfig train;
  /// Enforce server verdicts. Off: verdicts are computed but not acted on.
  bool security = true;
  bool encrypt = true;
  std::string signature_scheme = std::string(crypto::kRsaSha256);
  unsigned key_bits = 2048;
  crypto::DhParams dh = crypto::DhParams::modp2048();
  adversary::AttackConfig attack;
  cfa::ControlFlowGraph client_graph = cfa::ControlFlowGraph::default_client();
  cfa::ControlFlowGraph server_graph = cfa::ControlFlowGraph::default_server();
  std::uint64_t seed = 0;
};

/// One server, its registered clients and the configured adversary, driven a
/// round at a time. Every key, dataset split and attack draw derives from
/// cfg.seed, so runs are reproducible bit for bit.
class Federation {
 public:
  /// Client i gets client_data[i] and id "client-NNN". Throws
  /// std::invalid_argument when there are no clients.
  Federation(FederationConfig cfg, std::vector<model::Dataset> client_data, model::Dataset eval);

  /// Broadcast, collect (with adversary interference), verify, aggregate,
  /// apply, evaluate. Throws RoundAborted if the server's own trace fails.
  harness::RoundReport run_round();

  const Server& server() const { return server_; }
  const std::vector<Client>& clients() const { return clients_; }
  const std::vector<Client>& sybils() const { return sybils_; }
  const std::vector<std::string>& compromised() const { return compromised_; }
  const FederationConfig& config() const { return cfg_; }
  model::Model global_model() const { return model::Model(cfg_.spec, server_.state().params); }

 private:
  bool is_compromised(const std::string& id) const;

  FederationConfig cfg_;
  model::Dataset eval_;
  Server server_;
  std::vector<Client> clients_;
  std::vector<Client> sybils_;
  std::vector<std::string> compromised_;
  std::vector<Bytes> captured_;
};

}  // namespace cfafl::protocol
