#include "cfafl/model/dataset.hpp"

#include <string>

#include "cfafl/errors.hpp"

namespace cfafl::model {

Dataset::Dataset(std::vector<double> features, std::vector<std::uint32_t> labels,
                 std::size_t num_features, std::size_t num_classes)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      num_features_(num_features),
      num_classes_(num_classes) {
  if (num_features_ == 0) throw DimensionError("dataset needs at least one feature");
  if (num_classes_ == 0) throw DimensionError("dataset needs at least one class");
  if (features_.size() != labels_.size() * num_features_) {
    throw DimensionError("feature matrix has " + std::to_string(features_.size()) +
                         " values, expected " + std::to_string(labels_.size() * num_features_));
  }
  for (std::uint32_t y : labels_) {
    if (y >= num_classes_) {
      throw DimensionError("label " + std::to_string(y) + " out of range for " +
                           std::to_string(num_classes_) + " classes");
    }
  }
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  std::vector<double> features;
  std::vector<std::uint32_t> labels;
  features.reserve(indices.size() * num_features_);
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw DimensionError("row index out of range");
    auto r = row(i);
    features.insert(features.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(std::move(features), std::move(labels), num_features_, num_classes_);
}

Dataset Dataset::with_labels(std::vector<std::uint32_t> labels) const {
  if (labels.size() != labels_.size()) throw DimensionError("label count changed");
  return Dataset(features_, std::move(labels), num_features_, num_classes_);
}

Dataset Dataset::concat(std::span<const Dataset> parts) {
  if (parts.empty()) throw DimensionError("nothing to concatenate");
  std::vector<double> features;
  std::vector<std::uint32_t> labels;
  for (const Dataset& d : parts) {
    if (d.num_features() != parts[0].num_features() || d.num_classes() != parts[0].num_classes()) {
      throw DimensionError("datasets disagree on feature or class count");
    }
    features.insert(features.end(), d.features_.begin(), d.features_.end());
    labels.insert(labels.end(), d.labels_.begin(), d.labels_.end());
  }
  return Dataset(std::move(features), std::move(labels), parts[0].num_features(), parts[0].num_classes());
}

}  // namespace cfafl::model
