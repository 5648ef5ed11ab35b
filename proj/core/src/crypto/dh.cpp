#include "cfafl/crypto/dh.hpp"

#include "cfafl/crypto/hash.hpp"

namespace cfafl::crypto {

DhParams DhParams::toy() { return DhParams{BigInt(23), BigInt(5)}; }

DhParams DhParams::modp2048() {
  static const char* kPrime =
      "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1"
      "29024E088A67CC74020BBEA63B139B22514A08798E3404DD"
      "EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245"
      "E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
      "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3D"
      "C2007CB8A163BF0598DA48361C55D39A69163FA8FD24CF5F"
      "83655D23DCA3AD961C62F356208552BB9ED529077096966D"
      "670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
      "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9"
      "DE2BCBF6955817183995497CEA956AE515D2261898FA0510"
      "15728E5A8AACAA68FFFFFFFFFFFFFFFF";
  return DhParams{BigInt(kPrime, 16), BigInt(2)};
}

void DhParams::validate() const {
  if (p <= 3) throw std::invalid_argument("DH modulus must exceed 3");
  if (g <= 1 || g >= p) throw std::invalid_argument("DH generator must satisfy 1 < g < p");
}

BigInt dh_public(const DhParams& params, const BigInt& priv) {
  params.validate();
  BigInt out;
  mpz_powm(out.get_mpz_t(), params.g.get_mpz_t(), priv.get_mpz_t(), params.p.get_mpz_t());
  return out;
}

DhKeyPair dh_keygen(const DhParams& params, std::uint64_t seed) {
  params.validate();
  HashDrbg drbg(seed, "dh-keygen");
  const std::size_t nbytes = (mpz_sizeinbase(params.p.get_mpz_t(), 2) + 7) / 8 + 8;
  const BigInt span = params.p - 3;  // [2, p-2] has p-3 elements
  BigInt priv = from_bytes_be(drbg.generate(nbytes)) % span + 2;
  BigInt pub = dh_public(params, priv);
  return DhKeyPair{std::move(priv), std::move(pub)};
}

SharedSecret dh_shared(const BigInt& priv, const BigInt& peer_public, const DhParams& params) {
  params.validate();
  if (peer_public < 2 || peer_public > params.p - 2) {
    throw DhError("peer public value outside [2, p-2]");
  }
  BigInt out;
  mpz_powm(out.get_mpz_t(), peer_public.get_mpz_t(), priv.get_mpz_t(), params.p.get_mpz_t());
  return SharedSecret{std::move(out)};
}

SymmetricKey kdf(const SharedSecret& secret) {
  const Digest d = sha256(to_bytes_be(secret.value));
  SymmetricKey key;
  key.bytes = d.bytes;
  return key;
}

}  // namespace cfafl::crypto
