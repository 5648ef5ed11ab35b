#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "cfafl/bytes.hpp"

namespace cfafl::crypto {

using BigInt = mpz_class;

/// Big-endian magnitude, left-padded with zeros to at least `min_len` bytes.
/// Zero encodes as an empty string when min_len is 0.
Bytes to_bytes_be(const BigInt& value, std::size_t min_len = 0);
BigInt from_bytes_be(ByteView bytes);

/// Deterministic byte stream: SHA-256(seed || label || counter) blocks.
class HashDrbg {
 public:
  HashDrbg(std::uint64_t seed, std::string_view label);
  Bytes generate(std::size_t n);

 private:
  Bytes prefix_;
  std::uint64_t counter_ = 0;
};

}  // namespace cfafl::crypto
