#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cfafl/adversary/attacks.hpp"
#include "cfafl/model/model.hpp"

namespace cfafl::harness {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DatasetSource { Synthetic, Idx };

/// Everything a run needs. Field defaults are the documented defaults.
struct ExperimentConfig {
  std::uint32_t rounds = 5;
  std::size_t clients = 4;
  std::uint64_t seed = 1;
  std::string out = "results.csv";
  bool security = true;
  bool encrypt = true;
  /// Off: durations are written as 0 so the CSV is byte-reproducible.
  bool timing = true;

  model::ModelKind model_kind = model::ModelKind::LogisticRegression;
  std::size_t hidden = 16;
  model::Activation activation = model::Activation::Tanh;

  DatasetSource source = DatasetSource::Synthetic;
  std::size_t per_client = 200;
  std::size_t features = 8;
  std::size_t classes = 4;
  double separation = 4.0;
  double holdout = 0.2;
  std::string idx_images;
  std::string idx_labels;
  std::size_t subset = 1000;

  double learning_rate = 0.1;
  std::size_t epochs = 5;
  std::optional<std::size_t> batch;  // nullopt: full batch

  adversary::AttackKind attack_kind = adversary::AttackKind::None;
  double attack_fraction = 0.25;
  /// Unset: adversary::default_strength(attack_kind).
  std::optional<double> attack_strength;
  double attack_noise = 0.01;
  /// Unset: derived from `seed`.
  std::optional<std::uint64_t> attack_seed;

  unsigned key_bits = 2048;
  /// "modp2048" or "toy".
  std::string dh_group = "modp2048";

  /// Throws ConfigError naming the offending key.
  void validate() const;
  adversary::AttackConfig attack() const;
  model::TrainingConfig training() const;
};

/// Sets one dotted key from its textual value. `line` (0 = not from a file)
/// is quoted in error messages. Throws ConfigError for unknown keys or bad values.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value, std::size_t line = 0);

/// Parses flat `key = value` text ('#' starts a comment line), starting from
/// defaults, then validates. Unknown or duplicate keys are errors.
ExperimentConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ExperimentConfig& cfg);

}  // namespace cfafl::harness
