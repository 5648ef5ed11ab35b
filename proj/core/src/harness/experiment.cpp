#include "cfafl/harness/experiment.hpp"

#include <cmath>
#include <numeric>

#include "cfafl/harness/csv.hpp"
#include "cfafl/harness/idx.hpp"
#include "cfafl/rng.hpp"

namespace cfafl::harness {

namespace {

std::size_t holdout_count(std::size_t n, double fraction) {
  auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
  if (fraction > 0.0 && k == 0) k = 1;
  if (k >= n) k = n - 1;
  return k;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  return order;
}

}  // namespace

ProvisionedData provision_data(const ExperimentConfig& cfg) {
  ProvisionedData out;
  if (cfg.source == DatasetSource::Synthetic) {
    auto parts = model::generate_synthetic(cfg.clients, cfg.per_client, cfg.features, cfg.classes, cfg.separation,
                                           derive_seed(cfg.seed, "data"));
    std::vector<model::Dataset> held;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto order = shuffled_indices(parts[i].size(), derive_seed(cfg.seed, "holdout", i));
      const std::size_t k = holdout_count(order.size(), cfg.holdout);
      const std::span<const std::size_t> all(order);
      held.push_back(parts[i].select(all.first(k)));
      out.clients.push_back(parts[i].select(all.subspan(k)));
    }
    out.eval = model::Dataset::concat(held);
    return out;
  }

  const model::Dataset data = load_idx(cfg.idx_images, cfg.idx_labels, cfg.subset, cfg.seed);
  const std::size_t k = holdout_count(data.size(), cfg.holdout);
  if (data.size() - k < cfg.clients) {
    throw ConfigError("IDX subset too small: " + std::to_string(data.size() - k) + " training rows for " +
                      std::to_string(cfg.clients) + " clients");
  }
  const auto order = shuffled_indices(data.size(), derive_seed(cfg.seed, "holdout"));
  const std::span<const std::size_t> all(order);
  out.eval = data.select(all.first(k));
  const auto train = all.subspan(k);
  const std::size_t base = train.size() / cfg.clients;
  const std::size_t extra = train.size() % cfg.clients;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < cfg.clients; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    out.clients.push_back(data.select(train.subspan(pos, len)));
    pos += len;
  }
  return out;
}

protocol::FederationConfig federation_config(const ExperimentConfig& cfg, const model::ModelSpec& spec) {
  protocol::FederationConfig f;
  f.spec = spec;
  f.train = cfg.training();
  f.security = cfg.security;
  f.encrypt = cfg.encrypt;
  f.key_bits = cfg.key_bits;
  f.dh = cfg.dh_group == "toy" ? crypto::DhParams::toy() : crypto::DhParams::modp2048();
  f.attack = cfg.attack();
  f.seed = cfg.seed;
  return f;
}

MetricsTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ProvisionedData data = provision_data(cfg);

  model::ModelSpec spec;
  spec.kind = cfg.model_kind;
  spec.num_features = data.eval.num_features();
  spec.num_classes = data.eval.num_classes();
  spec.hidden_width = cfg.model_kind == model::ModelKind::Mlp ? cfg.hidden : 0;
  spec.activation = cfg.activation;

  protocol::Federation federation(federation_config(cfg, spec), std::move(data.clients), std::move(data.eval));

  MetricsTable table;
  for (std::uint32_t r = 0; r < cfg.rounds; ++r) {
    try {
      table.rounds.push_back(federation.run_round());
    } catch (const std::exception& e) {
      if (!cfg.out.empty() && !table.rounds.empty()) {
        emit_csv(table, cfg.out, CsvOptions{cfg.timing, true});
      }
      throw ExperimentAborted("round " + std::to_string(r) + " aborted: " + e.what(), std::move(table));
    }
  }
  if (!cfg.out.empty()) emit_csv(table, cfg.out, CsvOptions{cfg.timing, false});
  return table;
}

}  // namespace cfafl::harness
