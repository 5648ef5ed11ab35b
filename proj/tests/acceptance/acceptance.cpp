// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cfafl/adversary/attacks.hpp"
#include "cfafl/cfa/verify.hpp"
#include "cfafl/crypto/cipher.hpp"
#include "cfafl/crypto/dh.hpp"
#include "cfafl/crypto/hash.hpp"
#include "cfafl/harness/experiment.hpp"
#include "cfafl/model/model.hpp"
#include "cfafl/protocol/aggregate.hpp"
#include "cfafl/protocol/federation.hpp"
#include "cfafl/rng.hpp"
#include "trace_mutation.hpp"

using namespace cfafl;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

harness::ExperimentConfig base_config() {
  harness::ExperimentConfig c;
  c.rounds = 5;
  c.clients = 4;
  c.timing = true;
  c.out.clear();
  return c;
}

protocol::Federation make_federation(const harness::ExperimentConfig& cfg) {
  harness::ProvisionedData data = harness::provision_data(cfg);
  model::ModelSpec spec;
  spec.kind = cfg.model_kind;
  spec.num_features = data.eval.num_features();
  spec.num_classes = data.eval.num_classes();
  spec.hidden_width = cfg.model_kind == model::ModelKind::Mlp ? cfg.hidden : 0;
  return protocol::Federation(harness::federation_config(cfg, spec), std::move(data.clients), std::move(data.eval));
}

// Honest run shared by criteria 1 and 2.
struct HonestRun {
  std::vector<harness::RoundReport> rounds;
  protocol::AuditLog audit;
  double seconds = 0.0;
};

const HonestRun& honest_run() {
  static const HonestRun run = [] {
    HonestRun r;
    const auto t0 = Clock::now();
    protocol::Federation fed = make_federation(base_config());
    for (int i = 0; i < 5; ++i) r.rounds.push_back(fed.run_round());
    r.seconds = seconds_since(t0);
    r.audit = fed.server().audit_log();
    return r;
  }();
  return run;
}

Outcome criterion_1() {
  const HonestRun& run = honest_run();
  Outcome o;
  for (const auto& r : run.rounds) {
    o.pass &= r.metrics.verification_rate == 100.0 && r.metrics.authentication_rate == 100.0;
  }
  o.pass &= run.rounds.size() == 5 && run.seconds < 10.0;
  o.detail = std::to_string(run.rounds.size()) + " rounds at 100/100, " + fmt("%.2f s", run.seconds);
  return o;
}

Outcome criterion_2() {
  const HonestRun& run = honest_run();
  std::size_t incidents = 0;
  for (const auto& r : run.rounds) incidents += r.metrics.non_repudiation_incidents;
  std::size_t replay_ok = 0;
  for (const auto& e : run.audit) replay_ok += protocol::replay_verification(e);
  Outcome o;
  o.pass = incidents == 0 && replay_ok == run.audit.size() && run.audit.size() == 20;
  o.detail = std::to_string(incidents) + " incidents, audit replay " + std::to_string(replay_ok) + "/" +
             std::to_string(run.audit.size());
  return o;
}

Outcome criterion_3() {
  const auto t0 = Clock::now();
  Outcome o;
  std::size_t flips = 0, rejected = 0, aggregated = 0;
  for (bool encrypt : {true, false}) {
    harness::ExperimentConfig cfg = base_config();
    cfg.clients = 1;
    cfg.features = 4;
    cfg.classes = 4;
    cfg.encrypt = encrypt;
    harness::ProvisionedData data = harness::provision_data(cfg);
    model::ModelSpec spec;
    spec.num_features = 4;
    spec.num_classes = 4;
    const auto fcfg = harness::federation_config(cfg, spec);
    const model::Layout layout = model::layout_for(spec);
    if (layout.total() != 20) return {false, "model does not have 20 parameters"};

    protocol::Server server(model::ParameterVector::zeros(layout),
                            crypto::keygen_signature(crypto::kRsaSha256, cfg.key_bits, 1),
                            crypto::dh_keygen(fcfg.dh, 2), protocol::ServerConfig{});
    protocol::Client client("client-000", data.clients[0], spec,
                            crypto::keygen_signature(crypto::kRsaSha256, cfg.key_bits, 3), crypto::dh_keygen(fcfg.dh, 4),
                            5);
    server.register_client(client.id(), client.signing_public(), client.dh().pub);
    client.establish_session(server.dh_public(), fcfg.dh);
    const auto outcome = client.client_round(server.state().params, 1, {fcfg.train, encrypt});
    const Bytes wire = protocol::serialize(*outcome.update);

    server.begin_round();
    for (std::size_t bit = 0; bit < wire.size() * 8; ++bit) {
      const auto r = server.receive(adversary::tamper_bytes(wire, bit, 0));
      ++flips;
      rejected += !r.verdict.accepted() && !r.queued;
    }
    aggregated += server.finish_round().aggregated;

    // The untouched message still goes through afterwards.
    server.begin_round();
    const auto again = client.client_round(server.state().params, 2, {fcfg.train, encrypt});
    o.pass &= server.receive(protocol::serialize(*again.update)).verdict.accepted();
    server.finish_round();
  }
  const double secs = seconds_since(t0);
  o.pass &= rejected == flips && aggregated == 0 && secs < 60.0;
  o.detail = std::to_string(rejected) + "/" + std::to_string(flips) + " flips rejected, " +
             std::to_string(aggregated) + " aggregated, " + fmt("%.1f s", secs);
  return o;
}

Outcome criterion_4() {
  harness::ExperimentConfig cfg = base_config();
  cfg.attack_kind = adversary::AttackKind::Sybil;
  cfg.attack_fraction = 0.75;
  protocol::Federation fed = make_federation(cfg);
  Outcome o;
  o.pass = fed.sybils().size() == 3;
  std::size_t sybil_msgs = 0, sybil_unknown = 0;
  std::string per_round;
  for (int i = 0; i < 5; ++i) {
    const auto report = fed.run_round();
    for (const auto& d : report.deliveries) {
      if (d.origin != harness::Origin::Sybil) continue;
      ++sybil_msgs;
      sybil_unknown += d.receipt.verdict.reason == protocol::VerdictReason::UnknownIdentity && !d.receipt.queued;
    }
    o.pass &= report.metrics.aggregated == 4;
    per_round += (i ? "," : "") + std::to_string(report.metrics.aggregated);
  }
  o.pass &= sybil_msgs == 15 && sybil_unknown == sybil_msgs;
  o.detail = std::to_string(sybil_unknown) + "/" + std::to_string(sybil_msgs) +
             " sybil messages unknown-identity, aggregated per round " + per_round;
  return o;
}

Outcome criterion_5() {
  harness::ExperimentConfig cfg = base_config();
  harness::ProvisionedData data = harness::provision_data(cfg);
  model::ModelSpec spec;
  spec.num_features = data.eval.num_features();
  spec.num_classes = data.eval.num_classes();
  const auto fcfg = harness::federation_config(cfg, spec);
  protocol::Server server(model::ParameterVector::zeros(model::layout_for(spec)),
                          crypto::keygen_signature(crypto::kRsaSha256, cfg.key_bits, 11),
                          crypto::dh_keygen(fcfg.dh, 12), protocol::ServerConfig{});
  std::vector<protocol::Client> clients;
  for (std::size_t i = 0; i < 4; ++i) {
    clients.emplace_back("client-00" + std::to_string(i), data.clients[i], spec,
                         crypto::keygen_signature(crypto::kRsaSha256, cfg.key_bits, 20 + i),
                         crypto::dh_keygen(fcfg.dh, 30 + i), 40 + i);
    server.register_client(clients[i].id(), clients[i].signing_public(), clients[i].dh().pub);
    clients[i].establish_session(server.dh_public(), fcfg.dh);
  }

  struct Capture {
    std::uint32_t round;
    protocol::SignedUpdate msg;
  };
  std::vector<Capture> captured;
  Rng rng(2025);
  Outcome o;
  std::size_t replays = 0, replay_aggregated = 0, replay_flagged = 0;
  const std::uint32_t rounds = 10;
  for (std::uint32_t round = 1; round <= rounds; ++round) {
    server.begin_round();
    // Spread 100 replays over rounds 2..10.
    const std::size_t want = round == 1 ? 0 : (100 - replays) / (rounds - round + 1);
    for (std::size_t k = 0; k < want; ++k) {
      const Capture& c = captured[rng.uniform_below(captured.size())];
      const auto r = server.receive(protocol::serialize(adversary::replay(c.msg, round)));
      ++replays;
      replay_aggregated += r.queued;
      replay_flagged += r.verdict.reason == protocol::VerdictReason::ReplayedRound;
    }
    for (const auto& c : clients) {
      auto out = c.client_round(server.state().params, round, {fcfg.train, cfg.encrypt});
      server.receive(protocol::serialize(*out.update));
      captured.push_back({round, std::move(*out.update)});
    }
    const auto summary = server.finish_round();
    o.pass &= summary.aggregated == 4;
    for (const auto& e : summary.audit) o.pass &= e.round == round;
  }
  o.pass &= replays == 100 && replay_aggregated == 0 && replay_flagged == 100;
  o.detail = std::to_string(replays) + " replays, " + std::to_string(replay_aggregated) + " aggregated, " +
             std::to_string(replay_flagged) + " flagged replayed-round";
  return o;
}

Outcome criterion_6() {
  const auto t0 = Clock::now();
  double clean = 0.0, on = 0.0, off = 0.0;
  const int seeds = 5;
  for (int s = 1; s <= seeds; ++s) {
    harness::ExperimentConfig cfg = base_config();
    cfg.rounds = 10;
    cfg.separation = 6.0;
    cfg.seed = static_cast<std::uint64_t>(s);
    clean += harness::run_experiment(cfg).final_accuracy();
    cfg.attack_kind = adversary::AttackKind::ModelPoison;
    cfg.attack_fraction = 0.25;
    cfg.attack_strength = -10.0;
    cfg.security = true;
    on += harness::run_experiment(cfg).final_accuracy();
    cfg.security = false;
    off += harness::run_experiment(cfg).final_accuracy();
  }
  clean /= seeds;
  on /= seeds;
  off /= seeds;
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = clean >= on && on >= off && clean - off >= 0.05 && clean - on <= 0.05 && secs < 120.0;
  o.detail = "clean " + fmt("%.4f", clean) + ", attack(on) " + fmt("%.4f", on) + ", attack(off) " +
             fmt("%.4f", off) + ", " + fmt("%.1f s", secs);
  return o;
}

// Central differences of the loss, coordinate by coordinate.
std::vector<double> numeric_gradient(const model::Model& m, const model::Dataset& d) {
  const double h = 1e-5;
  std::vector<double> base(m.params().values().begin(), m.params().values().end());
  std::vector<double> g(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto p = base, q = base;
    p[i] += h;
    q[i] -= h;
    g[i] = (model::loss(m.with_params(model::ParameterVector(m.params().layout(), p)), d) -
            model::loss(m.with_params(model::ParameterVector(m.params().layout(), q)), d)) /
           (2 * h);
  }
  return g;
}

Outcome criterion_7() {
  Rng rng(7);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    model::ModelSpec spec;
    spec.num_features = 1 + rng.uniform_below(6);
    spec.num_classes = 2 + rng.uniform_below(4);
    if (t % 2) {
      spec.kind = model::ModelKind::Mlp;
      spec.hidden_width = 1 + rng.uniform_below(6);
    }
    const model::Layout layout = model::layout_for(spec);
    std::vector<double> w(layout.total());
    for (double& v : w) v = 0.5 * rng.normal();
    const model::Model m(spec, model::ParameterVector(layout, w));
    const std::size_t n = 1 + rng.uniform_below(10);
    std::vector<double> x(n * spec.num_features);
    for (double& v : x) v = rng.normal();
    std::vector<std::uint32_t> y(n);
    for (auto& l : y) l = static_cast<std::uint32_t>(rng.uniform_below(spec.num_classes));
    const model::Dataset d(x, y, spec.num_features, spec.num_classes);
    const auto g = model::gradient(m, d);
    const auto fd = numeric_gradient(m, d);
    double diff = 0.0, ng = 0.0, nf = 0.0;
    for (std::size_t i = 0; i < fd.size(); ++i) {
      diff += (g[i] - fd[i]) * (g[i] - fd[i]);
      ng += g[i] * g[i];
      nf += fd[i] * fd[i];
    }
    worst = std::max(worst, std::sqrt(diff) / std::max({std::sqrt(ng), std::sqrt(nf), 1e-12}));
  }
  return {worst < 1e-4, "worst relative error " + fmt("%.2e", worst) + " over 20 instances"};
}

Outcome criterion_8() {
  Rng rng(8);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t dim = 1 + rng.uniform_below(40);
    const model::Layout layout({{"w", 1, dim}});
    std::vector<protocol::WeightedUpdate> set;
    const std::size_t count = 1 + rng.uniform_below(12);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> v(dim);
      for (double& x : v) x = 2.0 * rng.normal();
      set.push_back({"c" + std::to_string(i), 1 + rng.uniform_below(1000), model::ParameterVector(layout, v)});
    }
    const auto g = protocol::aggregate(set);
    if (!g) return {false, "aggregate returned nothing"};
    for (std::size_t k = 0; k < dim; ++k) {
      long double num = 0.0L, den = 0.0L;
      for (const auto& u : set) {
        num += static_cast<long double>(u.data_size) * u.update[k];
        den += static_cast<long double>(u.data_size);
      }
      worst = std::max(worst, std::fabs((*g)[k] - static_cast<double>(num / den)));
    }
  }
  const model::Layout two({{"w", 1, 2}});
  const std::vector<protocol::WeightedUpdate> hand{{"a", 10, model::ParameterVector(two, {1.0, 1.0})},
                                                   {"b", 30, model::ParameterVector(two, {-1.0, 3.0})}};
  const auto h = protocol::aggregate(hand);
  const double hand_err = std::max(std::fabs((*h)[0] + 0.5), std::fabs((*h)[1] - 2.5));
  return {worst <= 1e-12 && hand_err <= 1e-15,
          "worst elementwise error " + fmt("%.2e", worst) + ", hand example error " + fmt("%.1e", hand_err)};
}

Outcome criterion_9() {
  Outcome o;
  o.pass &= crypto::sha256(to_bytes("")).hex() == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
  o.pass &= crypto::sha256(to_bytes("abc")).hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad";
  const auto toy = crypto::DhParams::toy();
  const crypto::BigInt A = crypto::dh_public(toy, 6), B = crypto::dh_public(toy, 15);
  o.pass &= A == 8 && B == 19;
  o.pass &= crypto::dh_shared(6, B, toy).value == 2 && crypto::dh_shared(15, A, toy).value == 2;

  Rng rng(9);
  std::size_t roundtrips = 0, flips = 0, flips_rejected = 0;
  for (int t = 0; t < 1000; ++t) {
    crypto::SymmetricKey key;
    for (auto& b : key.bytes) b = static_cast<std::uint8_t>(rng.uniform_below(256));
    crypto::Nonce nonce;
    for (auto& b : nonce) b = static_cast<std::uint8_t>(rng.uniform_below(256));
    Bytes pt(1 + rng.uniform_below(64));
    for (auto& b : pt) b = static_cast<std::uint8_t>(rng.uniform_below(256));
    const auto env = crypto::encrypt(key, nonce, pt);
    roundtrips += crypto::decrypt(key, env) == pt;
    for (std::size_t bit = 0; bit < env.ciphertext.size() * 8; ++bit) {
      auto bad = env;
      bad.ciphertext[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
      ++flips;
      try {
        crypto::decrypt(key, bad);
      } catch (const crypto::IntegrityError&) {
        ++flips_rejected;
      }
    }
  }
  o.pass &= roundtrips == 1000 && flips_rejected == flips;
  o.detail = "hash and DH vectors, " + std::to_string(roundtrips) + "/1000 round trips, " +
             std::to_string(flips_rejected) + "/" + std::to_string(flips) + " ciphertext flips rejected";
  return o;
}

Outcome criterion_10() {
  harness::ExperimentConfig cfg = base_config();
  protocol::Federation fed = make_federation(cfg);
  const auto client_graph = cfa::ControlFlowGraph::default_client();

  // Honest traces: reports produced directly, then the same pipeline's
  // messages as judged by the server.
  std::vector<std::pair<cfa::AttestationReport, crypto::PublicKey>> client_traces;
  Outcome o;
  std::size_t honest = 0, honest_ok = 0;
  for (int round = 0; round < 3; ++round) {
    const std::uint32_t r = fed.server().current_round();
    for (const auto& c : fed.clients()) {
      const auto out = c.client_round(fed.server().state().params, r, {fed.config().train, false});
      ++honest;
      honest_ok += cfa::verify_trace(client_graph, out.report, c.signing_public()).ok;
      client_traces.emplace_back(out.report, c.signing_public());
    }
    const auto report = fed.run_round();
    for (const auto& d : report.deliveries) {
      ++honest;
      honest_ok += d.receipt.verdict.accepted();
    }
  }

  // Mutations: raw edits of client traces (chain must catch them) and
  // re-chained, re-signed edits (control flow must catch them).
  const auto signer = crypto::keygen_signature(crypto::kRsaSha256, 1024, 77);
  std::vector<cfa::Checkpoint> path;
  for (const auto& e : client_traces.front().first.log.entries()) path.push_back(e.checkpoint);
  cfa::CheckpointLog legal;
  for (const auto& cp : path) legal.append(cp);
  const cfa::AttestationReport resealable = cfa::seal(legal, signer.priv);
  honest_ok += cfa::verify_trace(client_graph, resealable, signer.pub).ok;
  ++honest;

  Rng rng(10);
  std::size_t mutations = 0, halted = 0;
  for (int t = 0; t < 1000; ++t) {
    bool ok = true;
    if (t % 2 == 0) {
      const auto& [report, key] = client_traces[rng.uniform_below(client_traces.size())];
      cfa::AttestationReport m = report;
      fixtures::mutate_raw(m, rng);
      ok = cfa::verify_trace(client_graph, m, key).ok;
    } else {
      cfa::AttestationReport m = resealable;
      fixtures::mutate_resealed(m, signer.priv, rng);
      ok = cfa::verify_trace(client_graph, m, signer.pub).ok;
    }
    ++mutations;
    halted += !ok;
  }
  o.pass = honest_ok == honest && halted == mutations;
  o.detail = std::to_string(honest_ok) + "/" + std::to_string(honest) + " honest traces ok, " +
             std::to_string(halted) + "/" + std::to_string(mutations) + " mutations halted";
  return o;
}

Outcome criterion_11() {
  const auto t0 = Clock::now();
  const std::vector<std::size_t> sizes{10, 20, 40};
  std::vector<protocol::Federation> feds;
  for (std::size_t n : sizes) {
    harness::ExperimentConfig cfg = base_config();
    cfg.clients = n;
    feds.push_back(make_federation(cfg));
    feds.back().run_round();  // warm-up
  }
  // Rounds are interleaved across sizes so slow phases of a shared machine
  // hit every size alike; the median round is kept per size.
  std::vector<std::vector<double>> ms(sizes.size());
  for (int r = 0; r < 9; ++r) {
    for (std::size_t i = 0; i < sizes.size(); ++i) ms[i].push_back(feds[i].run_round().duration_ms);
  }
  std::vector<double> per_client;
  std::string detail;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::nth_element(ms[i].begin(), ms[i].begin() + 4, ms[i].end());
    per_client.push_back(ms[i][4] / static_cast<double>(sizes[i]));
    detail += "N=" + std::to_string(sizes[i]) + ": " + fmt("%.2f ms/client", per_client.back()) + "; ";
  }
  const double ratio = *std::max_element(per_client.begin(), per_client.end()) /
                       *std::min_element(per_client.begin(), per_client.end());
  const double secs = seconds_since(t0);
  return {ratio < 1.5 && secs < 180.0, detail + "max/min " + fmt("%.2f", ratio) + ", " + fmt("%.1f s", secs)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 honest run verification and authentication at 100% every round", criterion_1},
      {"2 honest run non-repudiation incidents and audit replay", criterion_2},
      {"3 every single-bit flip of a signed update rejected", criterion_3},
      {"4 sybil identities rejected, honest updates aggregated", criterion_4},
      {"5 replayed updates never aggregated", criterion_5},
      {"6 model poisoning: clean >= attack(on) >= attack(off)", criterion_6},
      {"7 analytic gradients match finite differences", criterion_7},
      {"8 weighted aggregation matches brute force", criterion_8},
      {"9 hash, key exchange and cipher vectors", criterion_9},
      {"10 attestation traces: honest ok, mutations halt", criterion_10},
      {"11 per-client round time stable across N", criterion_11},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %s (%s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
