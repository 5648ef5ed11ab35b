#include "cfafl/crypto/cipher.hpp"

#include <openssl/crypto.h>

#include <algorithm>

namespace cfafl::crypto {

namespace {

void apply_keystream(const SymmetricKey& key, const Nonce& nonce, ByteView in, Bytes& out) {
  out.resize(in.size());
  for (std::uint64_t block = 0; block * 32 < in.size(); ++block) {
    ByteWriter ctr;
    ctr.u64(block);
    const Digest ks = sha256({key.bytes, nonce, ctr.bytes()});
    const std::size_t start = block * 32;
    const std::size_t end = std::min<std::size_t>(in.size(), start + 32);
    for (std::size_t i = start; i < end; ++i) out[i] = in[i] ^ ks.bytes[i - start];
  }
}

Digest compute_tag(const SymmetricKey& key, const Nonce& nonce, ByteView ciphertext) {
  return sha256({key.bytes, nonce, ciphertext});
}

}  // namespace

CipherEnvelope encrypt(const SymmetricKey& key, const Nonce& nonce, ByteView plaintext) {
  CipherEnvelope env;
  env.nonce = nonce;
  apply_keystream(key, nonce, plaintext, env.ciphertext);
  env.tag = compute_tag(key, nonce, env.ciphertext);
  return env;
}

Bytes decrypt(const SymmetricKey& key, const CipherEnvelope& envelope) {
  const Digest expected = compute_tag(key, envelope.nonce, envelope.ciphertext);
  if (CRYPTO_memcmp(expected.bytes.data(), envelope.tag.bytes.data(), expected.bytes.size()) != 0) {
    throw IntegrityError("authentication tag mismatch");
  }
  Bytes plaintext;
  apply_keystream(key, envelope.nonce, envelope.ciphertext, plaintext);
  return plaintext;
}

Nonce derive_nonce(std::string_view client_id, std::uint32_t round) {
  ByteWriter w;
  w.raw(client_id);
  w.u32(round);
  const Digest d = sha256(w.bytes());
  Nonce n;
  std::copy_n(d.bytes.begin(), n.size(), n.begin());
  return n;
}

}  // namespace cfafl::crypto
