#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cfafl/bytes.hpp"
#include "cfafl/cfa/log.hpp"
#include "cfafl/crypto/cipher.hpp"
#include "cfafl/crypto/hash.hpp"
#include "cfafl/crypto/signature.hpp"
#include "cfafl/model/parameter_vector.hpp"

namespace cfafl::protocol {

/// A client's secured contribution for one round: the update, its digest, the
/// signature over that digest, and the sealed attestation of the pipeline
/// that produced it.
///
/// digest == SHA-256(canonical_encode(update, round, client_id, data_size)).
/// With transport encryption on, `update` is empty and the canonical encoding
/// travels inside `envelope`.
struct SignedUpdate {
  std::string client_id;
  std::uint32_t round = 0;
  std::uint64_t data_size = 0;
  model::ParameterVector update;
  crypto::Digest digest;
  crypto::Signature signature;
  cfa::AttestationReport attestation;
  std::optional<crypto::CipherEnvelope> envelope;

  bool encrypted() const { return envelope.has_value(); }
};

inline constexpr std::uint8_t kSignedUpdateVersion = 0x01;

/// Wire layout (integers big-endian):
///
///   u8  version (0x01)
///   u32 body length, body = canonical encoding (no parameters when encrypted)
///   32  digest
///   u16 signature length, signature
///   u32 report length, attestation report
///   u8  envelope flag; if 1: 16-byte nonce, u32 ciphertext length, ciphertext, 32-byte tag
Bytes serialize(const SignedUpdate& msg);

/// Strict inverse of `serialize`. The clear update must have `layout.total()`
/// finite values (or none when encrypted). Throws DecodeError otherwise.
SignedUpdate parse_signed_update(ByteView wire, const model::Layout& layout);

/// Digest the client signs: SHA-256 of the canonical encoding.
crypto::Digest update_digest(const model::ParameterVector& update, std::uint32_t round, std::string_view client_id,
                             std::uint64_t data_size);

}  // namespace cfafl::protocol
