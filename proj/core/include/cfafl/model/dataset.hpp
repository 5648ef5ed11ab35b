#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cfafl::model {

/// Row-major feature matrix with one class label per row.
class Dataset {
 public:
  Dataset() = default;
  /// Throws DimensionError unless features.size() == labels.size() * num_features
  /// and every label is below num_classes.
  Dataset(std::vector<double> features, std::vector<std::uint32_t> labels, std::size_t num_features,
          std::size_t num_classes);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t num_features() const { return num_features_; }
  std::size_t num_classes() const { return num_classes_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features_).subspan(i * num_features_, num_features_);
  }
  std::uint32_t label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }
  const std::vector<double>& features() const { return features_; }

  /// Rows at `indices`, in that order.
  Dataset select(std::span<const std::size_t> indices) const;
  /// Copy with labels replaced; same validation as the constructor.
  Dataset with_labels(std::vector<std::uint32_t> labels) const;

  /// Row-wise concatenation; all parts must share feature and class counts.
  static Dataset concat(std::span<const Dataset> parts);

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<double> features_;
  std::vector<std::uint32_t> labels_;
  std::size_t num_features_ = 0;
  std::size_t num_classes_ = 0;
};

}  // namespace cfafl::model
