#include <benchmark/benchmark.h>

#include "cfafl/cfa/verify.hpp"
#include "cfafl/crypto/cipher.hpp"
#include "cfafl/crypto/hash.hpp"
#include "cfafl/crypto/signature.hpp"
#include "cfafl/harness/experiment.hpp"
#include "cfafl/model/model.hpp"
#include "cfafl/protocol/aggregate.hpp"
#include "cfafl/protocol/federation.hpp"
#include "cfafl/rng.hpp"

using namespace cfafl;

namespace {

const crypto::SignatureKeyPair& rsa_keys(unsigned bits) {
  static std::map<unsigned, crypto::SignatureKeyPair> cache;
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, crypto::keygen_signature(crypto::kRsaSha256, bits, 1)).first;
  return it->second;
}

void BM_Sha256(benchmark::State& state) {
  const Bytes data(static_cast<std::size_t>(state.range(0)), 0x5a);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::sha256(data));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(4096)->Arg(1 << 20);

void BM_RsaSign(benchmark::State& state) {
  const auto& kp = rsa_keys(static_cast<unsigned>(state.range(0)));
  const crypto::Digest d = crypto::sha256(to_bytes("update"));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::sign(d, kp.priv));
}
BENCHMARK(BM_RsaSign)->Arg(1024)->Arg(2048)->Unit(benchmark::kMicrosecond);

void BM_RsaVerify(benchmark::State& state) {
  const auto& kp = rsa_keys(static_cast<unsigned>(state.range(0)));
  const crypto::Digest d = crypto::sha256(to_bytes("update"));
  const crypto::Signature s = crypto::sign(d, kp.priv);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::verify(d, s, kp.pub));
}
BENCHMARK(BM_RsaVerify)->Arg(1024)->Arg(2048)->Unit(benchmark::kMicrosecond);

void BM_Encrypt(benchmark::State& state) {
  crypto::SymmetricKey key{};
  const crypto::Nonce nonce{};
  const Bytes pt(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::encrypt(key, nonce, pt));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Encrypt)->Arg(256)->Arg(16384);

void BM_LocalTrain(benchmark::State& state) {
  model::ModelSpec spec;
  spec.num_features = 8;
  spec.num_classes = 4;
  if (state.range(0) == 1) {
    spec.kind = model::ModelKind::Mlp;
    spec.hidden_width = 16;
  }
  const auto data = model::generate_synthetic(1, 160, 8, 4, 4.0, 1)[0];
  const model::Model m = model::Model::initialized(spec, 2);
  model::TrainingConfig cfg;
  cfg.epochs = 5;
  for (auto _ : state) benchmark::DoNotOptimize(model::local_train(m, data, cfg));
}
BENCHMARK(BM_LocalTrain)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Aggregate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const model::Layout layout({{"w", 1, 1000}});
  Rng rng(3);
  std::vector<protocol::WeightedUpdate> set;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(1000);
    for (double& x : v) x = rng.normal();
    set.push_back({"c" + std::to_string(i), 100 + i, model::ParameterVector(layout, v)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(protocol::aggregate(set));
}
BENCHMARK(BM_Aggregate)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_VerifyTrace(benchmark::State& state) {
  const auto& kp = rsa_keys(2048);
  cfa::CheckpointLog log;
  for (auto l : {cfa::Label::RoundStart, cfa::Label::TrainBegin, cfa::Label::TrainEnd, cfa::Label::UpdateHashed,
                 cfa::Label::UpdateSigned, cfa::Label::UpdateSent, cfa::Label::RoundEnd}) {
    log.append({l, "client-000", 1, {}});
  }
  const auto report = cfa::seal(log, kp.priv);
  const auto graph = cfa::ControlFlowGraph::default_client();
  for (auto _ : state) benchmark::DoNotOptimize(cfa::verify_trace(graph, report, kp.pub));
}
BENCHMARK(BM_VerifyTrace)->Unit(benchmark::kMicrosecond);

void BM_RunRound(benchmark::State& state) {
  harness::ExperimentConfig cfg;
  cfg.clients = static_cast<std::size_t>(state.range(0));
  cfg.rounds = 1;
  harness::ProvisionedData data = harness::provision_data(cfg);
  model::ModelSpec spec;
  spec.num_features = data.eval.num_features();
  spec.num_classes = data.eval.num_classes();
  protocol::Federation fed(harness::federation_config(cfg, spec), std::move(data.clients), std::move(data.eval));
  for (auto _ : state) benchmark::DoNotOptimize(fed.run_round());
  state.counters["per_client_ms"] = benchmark::Counter(
      static_cast<double>(cfg.clients), benchmark::Counter::kIsIterationInvariantRate | benchmark::Counter::kInvert);
}
BENCHMARK(BM_RunRound)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
