#include "cfafl/crypto/signature.hpp"

#include <limits>

#include "cfafl/crypto/rsa.hpp"

namespace cfafl::crypto {

const SignatureScheme& signature_scheme(std::string_view id) {
  static const RsaSha256Scheme rsa;
  if (id == rsa.id()) return rsa;
  throw UnsupportedScheme("unsupported signature scheme '" + std::string(id) + "'");
}

SignatureKeyPair keygen_signature(std::string_view scheme, unsigned key_bits, std::uint64_t seed) {
  return signature_scheme(scheme).generate(key_bits, seed);
}

Signature sign(const Digest& digest, const PrivateKey& key) {
  return signature_scheme(key.scheme).sign(digest, key);
}

bool verify(const Digest& digest, const Signature& sig, const PublicKey& key) {
  try {
    return signature_scheme(key.scheme).verify(digest, sig, key);
  } catch (const UnsupportedScheme&) {
    return false;
  }
}

Bytes serialize_public_key(const PublicKey& key) {
  if (key.scheme.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("scheme id too long");
  }
  ByteWriter w;
  w.u16(static_cast<std::uint16_t>(key.scheme.size()));
  w.raw(key.scheme);
  w.u32(static_cast<std::uint32_t>(key.modulus.size()));
  w.raw(key.modulus);
  w.u32(static_cast<std::uint32_t>(key.exponent.size()));
  w.raw(key.exponent);
  return std::move(w).take();
}

PublicKey parse_public_key(ByteView bytes) {
  ByteReader r(bytes);
  PublicKey key;
  key.scheme = r.str(r.u16());
  ByteView mod = r.raw(r.u32());
  key.modulus.assign(mod.begin(), mod.end());
  ByteView exp = r.raw(r.u32());
  key.exponent.assign(exp.begin(), exp.end());
  r.expect_done();
  return key;
}

}  // namespace cfafl::crypto
