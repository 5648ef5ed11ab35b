#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfafl/model/dataset.hpp"
#include "cfafl/model/parameter_vector.hpp"

namespace cfafl::model {

enum class ModelKind { LogisticRegression, Mlp };
enum class Activation { Tanh, Relu };

std::string_view to_string(ModelKind kind);
std::string_view to_string(Activation act);

struct ModelSpec {
  ModelKind kind = ModelKind::LogisticRegression;
  std::size_t num_features = 1;
  std::size_t num_classes = 2;
  std::size_t hidden_width = 0;  // mlp only
  Activation activation = Activation::Tanh;

  bool operator==(const ModelSpec&) const = default;
};

/// Parameter layout for a ModelSpec.
///
///   logistic regression: W [classes x features], b [classes x 1]
///   mlp:                 W1 [hidden x features], b1 [hidden x 1],
///                        W2 [classes x hidden],  b2 [classes x 1]
Layout layout_for(const ModelSpec& spec);

/// Softmax classifier (linear or one hidden layer) over a flat parameter vector.
class Model {
 public:
  Model(ModelSpec spec, ParameterVector params);

  /// All-zero parameters.
  static Model zeros(const ModelSpec& spec);
  /// Logistic regression starts at zero; the mlp draws Xavier-uniform weights
  /// from `seed` and zero biases.
  static Model initialized(const ModelSpec& spec, std::uint64_t seed);

  const ModelSpec& spec() const { return spec_; }
  const ParameterVector& params() const { return params_; }
  Model with_params(ParameterVector params) const { return Model(spec_, std::move(params)); }

 private:
  ModelSpec spec_;
  ParameterVector params_;
};

/// Class probabilities for one feature row.
std::vector<double> forward(const Model& model, std::span<const double> features);

/// Mean softmax cross-entropy over the dataset.
double loss(const Model& model, const Dataset& data);

/// Gradient of `loss` with respect to the parameters, same layout as the model.
ParameterVector gradient(const Model& model, const Dataset& data);

/// Fraction of rows whose argmax prediction (lowest index on ties) matches the label.
double evaluate(const Model& model, const Dataset& data);

struct TrainingConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 1;
  std::optional<std::size_t> batch_size;  // nullopt: full batch
  std::uint64_t seed = 0;

  void validate() const;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainResult {
  ParameterVector new_params;
  /// new_params - initial params; initial + update == new_params exactly.
  ParameterVector update;
};

/// Gradient descent for cfg.epochs passes over `data`, starting at model.params().
/// Throws TrainingError when a non-finite gradient or parameter appears.
TrainResult local_train(const Model& model, const Dataset& data, const TrainingConfig& cfg);

/// Per-client Gaussian class clusters (unit variance) whose means are pairwise
/// `separation` apart. Labels are balanced within +-1 on every client.
std::vector<Dataset> generate_synthetic(std::size_t num_clients, std::size_t per_client,
                                        std::size_t num_features, std::size_t num_classes,
                                        double separation, std::uint64_t seed);

}  // namespace cfafl::model
