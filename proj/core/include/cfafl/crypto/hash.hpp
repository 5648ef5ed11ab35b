#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "cfafl/bytes.hpp"

namespace cfafl::crypto {

/// 32-byte SHA-256 output.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  ByteView view() const { return bytes; }
  std::string hex() const { return to_hex(bytes); }
  bool operator==(const Digest&) const = default;
  auto operator<=>(const Digest&) const = default;

  /// Throws DecodeError unless `raw` is exactly 32 bytes.
  static Digest from(ByteView raw);
};

/// SHA-256 (FIPS 180-4) of `data`.
Digest sha256(ByteView data);
/// SHA-256 of the concatenation of `parts`.
Digest sha256(std::initializer_list<ByteView> parts);

}  // namespace cfafl::crypto
