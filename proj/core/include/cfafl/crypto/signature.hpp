#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cfafl/bytes.hpp"
#include "cfafl/crypto/hash.hpp"

namespace cfafl::crypto {

/// Scheme id of the default signature scheme.
inline constexpr std::string_view kRsaSha256 = "rsa-pkcs1v15-sha256";

/// Verification key: scheme id plus big-endian modulus and exponent octets.
struct PublicKey {
  std::string scheme;
  Bytes modulus;
  Bytes exponent;

  bool operator==(const PublicKey&) const = default;
};

/// Scheme-specific signing material; only the owning scheme interprets it.
class PrivateMaterial {
 public:
  virtual ~PrivateMaterial() = default;
};

struct PrivateKey {
  std::string scheme;
  std::shared_ptr<const PrivateMaterial> material;
};

struct SignatureKeyPair {
  PrivateKey priv;
  PublicKey pub;
};

struct Signature {
  Bytes bytes;
  bool operator==(const Signature&) const = default;
};

class UnsupportedScheme : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Contract every deterministic signature scheme implements.
class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;
  virtual std::string_view id() const = 0;
  virtual SignatureKeyPair generate(unsigned key_bits, std::uint64_t seed) const = 0;
  virtual Signature sign(const Digest& digest, const PrivateKey& key) const = 0;
  /// Never throws on malformed input; returns false instead.
  virtual bool verify(const Digest& digest, const Signature& sig, const PublicKey& key) const = 0;
};

/// Looks up a registered scheme; throws UnsupportedScheme.
const SignatureScheme& signature_scheme(std::string_view id);

/// Deterministic for a fixed (scheme, key_bits, seed).
SignatureKeyPair keygen_signature(std::string_view scheme, unsigned key_bits, std::uint64_t seed);
Signature sign(const Digest& digest, const PrivateKey& key);
bool verify(const Digest& digest, const Signature& sig, const PublicKey& key);

/// u16 scheme length + scheme, u32 modulus length + modulus, u32 exponent length + exponent.
Bytes serialize_public_key(const PublicKey& key);
PublicKey parse_public_key(ByteView bytes);

}  // namespace cfafl::crypto
