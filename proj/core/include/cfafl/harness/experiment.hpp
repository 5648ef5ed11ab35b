#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cfafl/harness/config.hpp"
#include "cfafl/harness/metrics.hpp"
#include "cfafl/model/dataset.hpp"
#include "cfafl/protocol/federation.hpp"

namespace cfafl::harness {

/// A run that stopped early. Carries the rounds that completed; the CSV
/// written for it (if any rounds completed) has an "aborted" summary row.
class ExperimentAborted : public std::runtime_error {
 public:
  ExperimentAborted(const std::string& what, MetricsTable partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const MetricsTable& partial() const { return partial_; }

 private:
  MetricsTable partial_;
};

struct ProvisionedData {
  std::vector<model::Dataset> clients;
  model::Dataset eval;
};

/// Synthetic: per-client clusters with a seeded `holdout` share of each
/// client's rows pooled into the evaluation set. IDX: the seeded subset is
/// split into a held-out evaluation share and near-equal client shards.
ProvisionedData provision_data(const ExperimentConfig& cfg);

protocol::FederationConfig federation_config(const ExperimentConfig& cfg, const model::ModelSpec& spec);

/// Runs cfg.rounds rounds, writes the CSV to cfg.out (skipped when empty)
/// and returns the table. Module errors raised mid-run become ExperimentAborted.
MetricsTable run_experiment(const ExperimentConfig& cfg);

}  // namespace cfafl::harness
