#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cfafl/model/model.hpp"
#include "cfafl/rng.hpp"

namespace cfafl::model {

void TrainingConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be finite and non-negative");
  }
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (batch_size && *batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
}

namespace {

// Chooses (next, delta) with next - initial == delta and initial + delta == next
// in binary64, starting from the trained values.
void project_exact(std::span<const double> initial, std::span<double> next, std::span<double> delta) {
  for (std::size_t i = 0; i < initial.size(); ++i) {
    double n = next[i];
    double d = n - initial[i];
    for (int iter = 0; iter < 8 && initial[i] + d != n; ++iter) {
      n = initial[i] + d;
      d = n - initial[i];
    }
    next[i] = n;
    delta[i] = d;
  }
}

}  // namespace

TrainResult local_train(const Model& model, const Dataset& data, const TrainingConfig& cfg) {
  cfg.validate();
  if (data.empty()) throw std::invalid_argument("cannot train on an empty dataset");

  Model current = model;
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  try {
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      if (!cfg.batch_size || *cfg.batch_size >= data.size()) {
        ParameterVector step = current.params();
        step.add_scaled(gradient(current, data), -cfg.learning_rate);
        current = current.with_params(std::move(step));
        continue;
      }
      rng.shuffle(std::span<std::size_t>(order));
      for (std::size_t start = 0; start < order.size(); start += *cfg.batch_size) {
        const std::size_t end = std::min(order.size(), start + *cfg.batch_size);
        Dataset batch = data.select(std::span<const std::size_t>(order).subspan(start, end - start));
        ParameterVector step = current.params();
        step.add_scaled(gradient(current, batch), -cfg.learning_rate);
        current = current.with_params(std::move(step));
      }
    }
  } catch (const NonFiniteError& e) {
    throw TrainingError(std::string("training diverged: ") + e.what());
  }

  ParameterVector next = current.params();
  ParameterVector update = ParameterVector::zeros(next.layout());
  project_exact(model.params().values(), next.mutable_values(), update.mutable_values());
  next.check_finite();
  update.check_finite();
  return TrainResult{std::move(next), std::move(update)};
}

}  // namespace cfafl::model
