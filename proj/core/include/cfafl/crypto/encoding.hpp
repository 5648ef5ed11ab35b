#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cfafl/bytes.hpp"
#include "cfafl/model/parameter_vector.hpp"

namespace cfafl::crypto {

inline constexpr std::uint8_t kCanonicalVersion = 0x01;

/// Canonical byte encoding of an update together with its round and origin:
///
///   u8  version (0x01)
///   u32 round
///   u16 client_id length, then UTF-8 bytes
///   u64 data_size
///   u64 parameter count
///   f64 x count, IEEE-754 bit patterns
///
/// All integers big-endian. Throws std::invalid_argument for ids over 65535 bytes.
Bytes canonical_encode(const model::ParameterVector& update, std::uint32_t round, std::string_view client_id,
                       std::uint64_t data_size);

/// Same layout from raw values, for callers that have no ParameterVector.
Bytes canonical_encode(std::span<const double> values, std::uint32_t round, std::string_view client_id,
                       std::uint64_t data_size);

struct CanonicalUpdate {
  std::uint32_t round = 0;
  std::string client_id;
  std::uint64_t data_size = 0;
  std::vector<double> values;

  bool operator==(const CanonicalUpdate&) const = default;
};

/// Strict inverse of canonical_encode; throws DecodeError on any deviation
/// (wrong version, truncation, trailing bytes).
CanonicalUpdate canonical_decode(ByteView bytes);

}  // namespace cfafl::crypto
