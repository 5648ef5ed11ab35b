#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cfafl/errors.hpp"

namespace cfafl::model {

/// One named rows x cols block of a flat parameter vector (row-major).
struct Block {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  bool operator==(const Block&) const = default;
};

/// Maps model structure to flat indices. Blocks are laid out back to back in
/// declaration order; this ordering is the canonical parameter ordering.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t total() const { return total_; }
  /// Flat index of the first element of block `i`.
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }

  bool operator==(const Layout& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// Flat vector of finite binary64 parameters with a layout descriptor.
///
/// Every constructor and arithmetic operation rejects NaN/Inf results with
/// NonFiniteError, and combining vectors of different layouts throws
/// LayoutMismatch.
class ParameterVector {
 public:
  ParameterVector() = default;
  explicit ParameterVector(Layout layout);
  ParameterVector(Layout layout, std::vector<double> values);

  static ParameterVector zeros(const Layout& layout) { return ParameterVector(layout); }

  const Layout& layout() const { return layout_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Mutable access for in-place numeric kernels. Callers must keep entries
  /// finite; `check_finite` re-establishes the invariant.
  std::span<double> mutable_values() { return values_; }
  void check_finite() const;

  ParameterVector& operator+=(const ParameterVector& other);
  ParameterVector& operator-=(const ParameterVector& other);
  ParameterVector& operator*=(double scale);
  /// this += scale * other
  ParameterVector& add_scaled(const ParameterVector& other, double scale);

  friend ParameterVector operator+(ParameterVector a, const ParameterVector& b) { return a += b; }
  friend ParameterVector operator-(ParameterVector a, const ParameterVector& b) { return a -= b; }
  friend ParameterVector operator*(double s, ParameterVector a) { return a *= s; }

  /// Layouts and values bitwise equal (+0.0 and -0.0 compare unequal).
  bool bitwise_equal(const ParameterVector& other) const;

 private:
  void require_combinable(const ParameterVector& other) const;

  Layout layout_;
  std::vector<double> values_;
};

}  // namespace cfafl::model
