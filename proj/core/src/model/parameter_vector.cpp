#include "cfafl/model/parameter_vector.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace cfafl::model {

Layout::Layout(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  offsets_.reserve(blocks_.size());
  for (const Block& b : blocks_) {
    offsets_.push_back(total_);
    total_ += b.size();
  }
}

ParameterVector::ParameterVector(Layout layout)
    : layout_(std::move(layout)), values_(layout_.total(), 0.0) {}

ParameterVector::ParameterVector(Layout layout, std::vector<double> values)
    : layout_(std::move(layout)), values_(std::move(values)) {
  if (values_.size() != layout_.total()) {
    throw DimensionError("parameter count " + std::to_string(values_.size()) +
                         " does not match layout total " + std::to_string(layout_.total()));
  }
  check_finite();
}

void ParameterVector::check_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) throw NonFiniteError("non-finite parameter value");
  }
}

void ParameterVector::require_combinable(const ParameterVector& other) const {
  if (!(layout_ == other.layout_)) throw LayoutMismatch("parameter layouts differ");
}

ParameterVector& ParameterVector::operator+=(const ParameterVector& other) {
  require_combinable(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  check_finite();
  return *this;
}

ParameterVector& ParameterVector::operator-=(const ParameterVector& other) {
  require_combinable(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  check_finite();
  return *this;
}

ParameterVector& ParameterVector::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  check_finite();
  return *this;
}

ParameterVector& ParameterVector::add_scaled(const ParameterVector& other, double scale) {
  require_combinable(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += scale * other.values_[i];
  check_finite();
  return *this;
}

bool ParameterVector::bitwise_equal(const ParameterVector& other) const {
  if (!(layout_ == other.layout_) || values_.size() != other.values_.size()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(values_[i]) != std::bit_cast<std::uint64_t>(other.values_[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace cfafl::model
