#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cfafl/bytes.hpp"
#include "cfafl/model/dataset.hpp"

namespace cfafl::harness {

class IdxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// Decodes an image/label IDX pair into a Dataset (pixels scaled by 1/255,
/// classes = largest label + 1). `subset` examples are drawn without
/// replacement by a seeded shuffle; 0 keeps every example in file order.
/// Throws IdxError on bad magic, truncation, trailing bytes, count mismatch
/// or a subset larger than the file.
model::Dataset parse_idx(ByteView images, ByteView labels, std::size_t subset, std::uint64_t seed);

/// Reads both files and calls parse_idx. Throws IdxError when a file cannot be read.
model::Dataset load_idx(const std::string& images_path, const std::string& labels_path, std::size_t subset,
                        std::uint64_t seed);

}  // namespace cfafl::harness
