#include "cfafl/protocol/federation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "cfafl/rng.hpp"

namespace cfafl::protocol {

namespace {

std::string client_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "client-%03zu", i);
  return buf;
}

Server make_server(const FederationConfig& cfg) {
  ServerConfig sc;
  sc.enforce = cfg.security;
  sc.dh = cfg.dh;
  sc.client_graph = cfg.client_graph;
  sc.server_graph = cfg.server_graph;
  return Server(model::Model::initialized(cfg.spec, derive_seed(cfg.seed, "global-init")).params(),
                crypto::keygen_signature(cfg.signature_scheme, cfg.key_bits, derive_seed(cfg.seed, "server-signing")),
                crypto::dh_keygen(cfg.dh, derive_seed(cfg.seed, "server-dh")), std::move(sc));
}

}  // namespace

Federation::Federation(FederationConfig cfg, std::vector<model::Dataset> client_data, model::Dataset eval)
    : cfg_(std::move(cfg)), eval_(std::move(eval)), server_(make_server(cfg_)) {
  if (client_data.empty()) throw std::invalid_argument("federation needs at least one client");
  cfg_.attack.validate();
  cfg_.train.validate();

  std::vector<std::string> ids;
  for (std::size_t i = 0; i < client_data.size(); ++i) ids.push_back(client_name(i));

  const adversary::AttackKind kind = cfg_.attack.kind;
  const std::size_t affected = cfg_.attack.affected_count(client_data.size());
  if (kind != adversary::AttackKind::Sybil && kind != adversary::AttackKind::None) {
    compromised_ = adversary::choose_compromised(ids, affected, cfg_.attack.seed);
  }

  for (std::size_t i = 0; i < client_data.size(); ++i) {
    const std::uint64_t seed = derive_seed(cfg_.seed, "client", i);
    model::Dataset data = std::move(client_data[i]);
    if (kind == adversary::AttackKind::DataPoison && is_compromised(ids[i])) {
      data = adversary::flip_labels(data, cfg_.attack.strength, derive_seed(cfg_.attack.seed, "flip", i));
    }
    Client client(ids[i], std::move(data), cfg_.spec,
                  crypto::keygen_signature(cfg_.signature_scheme, cfg_.key_bits, derive_seed(seed, "signing")),
                  crypto::dh_keygen(cfg_.dh, derive_seed(seed, "dh")), seed);
    server_.register_client(client.id(), client.signing_public(), client.dh().pub);
    client.establish_session(server_.dh_public(), cfg_.dh);

    if (kind == adversary::AttackKind::ModelPoison && is_compromised(ids[i])) {
      const double strength = cfg_.attack.strength;
      const double noise = cfg_.attack.noise;
      const std::uint64_t poison_seed = derive_seed(cfg_.attack.seed, "poison", i);
      client.set_post_train_hook([=](const model::ParameterVector& u, std::uint32_t round) {
        return adversary::poison_update(u, strength, noise, derive_seed(poison_seed, "round", round));
      });
    }
    clients_.push_back(std::move(client));
  }

  if (kind == adversary::AttackKind::Sybil && affected > 0) {
    adversary::SybilTemplate tmpl{clients_.front().data(),
                                  cfg_.spec,
                                  cfg_.signature_scheme,
                                  cfg_.key_bits,
                                  cfg_.dh,
                                  server_.dh_public(),
                                  cfg_.attack.strength,
                                  cfg_.attack.noise};
    sybils_ = adversary::spawn_sybil(affected, derive_seed(cfg_.attack.seed, "sybils"), tmpl);
  }
}

bool Federation::is_compromised(const std::string& id) const {
  return std::binary_search(compromised_.begin(), compromised_.end(), id);
}

harness::RoundReport Federation::run_round() {
  const auto started = std::chrono::steady_clock::now();
  const std::uint32_t round = server_.current_round();
  const model::ParameterVector global = server_.state().params;
  const ClientRoundConfig round_cfg{cfg_.train, cfg_.encrypt};
  const adversary::AttackKind kind = cfg_.attack.kind;

  struct Outgoing {
    Bytes wire;
    harness::Delivery delivery;
  };
  std::vector<Outgoing> outbox;

  for (std::size_t i = 0; i < clients_.size(); ++i) {
    const Client& client = clients_[i];
    ClientRoundOutcome outcome = client.client_round(global, round, round_cfg);
    if (!outcome.update) continue;  // dropout
    Outgoing out{serialize(*outcome.update), {client.id(), harness::Origin::Participant, false, false, {}}};
    out.delivery.compromised = is_compromised(client.id());
    if (out.delivery.compromised && kind == adversary::AttackKind::Tamper) {
      out.wire = adversary::tamper_bytes(out.wire, std::nullopt,
                                         derive_seed(cfg_.attack.seed, "tamper", round * 100003ULL + i));
      out.delivery.tampered = true;
    }
    if (out.delivery.compromised && kind == adversary::AttackKind::Replay) captured_.push_back(out.wire);
    outbox.push_back(std::move(out));
  }

  for (const Client& sybil : sybils_) {
    ClientRoundOutcome outcome = sybil.client_round(global, round, round_cfg);
    if (!outcome.update) continue;
    outbox.push_back(Outgoing{serialize(*outcome.update), {sybil.id(), harness::Origin::Sybil, false, false, {}}});
  }

  if (kind == adversary::AttackKind::Replay) {
    // Resubmit everything captured in earlier rounds.
    std::vector<Bytes> keep;
    for (Bytes& wire : captured_) {
      const SignedUpdate old = parse_signed_update(wire, global.layout());
      if (old.round < round) {
        outbox.push_back(Outgoing{serialize(adversary::replay(old, round)),
                                  {old.client_id, harness::Origin::Replay, false, true, {}}});
      } else {
        keep.push_back(std::move(wire));
      }
    }
    captured_ = std::move(keep);
  }

  server_.begin_round();
  std::vector<harness::Delivery> deliveries;
  deliveries.reserve(outbox.size());
  for (Outgoing& out : outbox) {
    out.delivery.receipt = server_.receive(out.wire);
    deliveries.push_back(std::move(out.delivery));
  }
  RoundSummary summary = server_.finish_round();

  harness::RoundReport report;
  report.round = round;
  report.client_count = clients_.size();
  report.metrics = harness::compute_metrics(deliveries, summary.audit);
  report.deliveries = std::move(deliveries);
  report.model_updated = summary.model_updated;
  report.non_finite_aborted = summary.non_finite_aborted;
  report.accuracy = model::evaluate(global_model(), eval_);
  report.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace cfafl::protocol
