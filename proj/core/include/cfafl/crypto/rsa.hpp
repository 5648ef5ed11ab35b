#pragma once

#include "cfafl/crypto/bigint.hpp"
#include "cfafl/crypto/signature.hpp"

namespace cfafl::crypto {

/// RSA with EMSA-PKCS1-v1_5 encoding of a SHA-256 digest (RFC 8017 9.2).
/// Padding is deterministic, so signatures are a pure function of key and digest.
class RsaSha256Scheme final : public SignatureScheme {
 public:
  std::string_view id() const override { return kRsaSha256; }
  /// key_bits must be one of 1024, 2048, 3072, 4096.
  SignatureKeyPair generate(unsigned key_bits, std::uint64_t seed) const override;
  Signature sign(const Digest& digest, const PrivateKey& key) const override;
  bool verify(const Digest& digest, const Signature& sig, const PublicKey& key) const override;
};

struct RsaPrivateMaterial final : PrivateMaterial {
  BigInt n, e, d, p, q, dp, dq, qinv;
};

/// EM = 0x00 0x01 FF..FF 0x00 DigestInfo(SHA-256) || digest, `k` bytes long.
Bytes emsa_pkcs1_v15_sha256(const Digest& digest, std::size_t k);

}  // namespace cfafl::crypto
