#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "cfafl/bytes.hpp"
#include "cfafl/crypto/dh.hpp"
#include "cfafl/crypto/hash.hpp"

namespace cfafl::crypto {

using Nonce = std::array<std::uint8_t, 16>;

/// Output of `encrypt`. The tag authenticates nonce and ciphertext.
struct CipherEnvelope {
  Nonce nonce{};
  Bytes ciphertext;
  Digest tag;

  bool operator==(const CipherEnvelope&) const = default;
};

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hash-counter stream cipher with a keyed-hash tag:
///   keystream block i = SHA-256(key || nonce || u64be(i))
///   ciphertext        = plaintext XOR keystream
///   tag               = SHA-256(key || nonce || ciphertext)
CipherEnvelope encrypt(const SymmetricKey& key, const Nonce& nonce, ByteView plaintext);

/// Verifies the tag, then decrypts. Throws IntegrityError on tag mismatch.
Bytes decrypt(const SymmetricKey& key, const CipherEnvelope& envelope);

/// First 16 bytes of SHA-256(client_id || u32be(round)).
Nonce derive_nonce(std::string_view client_id, std::uint32_t round);

}  // namespace cfafl::crypto
