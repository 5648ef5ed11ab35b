#include "cfafl/crypto/rsa.hpp"

#include <openssl/crypto.h>

#include <algorithm>
#include <array>

namespace cfafl::crypto {

namespace {

constexpr std::array<std::uint8_t, 19> kSha256DigestInfo = {0x30, 0x31, 0x30, 0x0d, 0x06, 0x09, 0x60,
                                                            0x86, 0x48, 0x01, 0x65, 0x03, 0x04, 0x02,
                                                            0x01, 0x05, 0x00, 0x04, 0x20};

BigInt random_prime(HashDrbg& drbg, unsigned bits, const BigInt& e) {
  const std::size_t nbytes = (bits + 7) / 8;
  for (;;) {
    BigInt candidate = from_bytes_be(drbg.generate(nbytes));
    // Trim to `bits`, force the top two bits (so p*q has full length) and oddness.
    mpz_fdiv_r_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), bits - 2);
    mpz_setbit(candidate.get_mpz_t(), 0);
    BigInt prime;
    mpz_nextprime(prime.get_mpz_t(), candidate.get_mpz_t());
    if (mpz_sizeinbase(prime.get_mpz_t(), 2) != bits) continue;
    BigInt g;
    BigInt pm1 = prime - 1;
    mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), pm1.get_mpz_t());
    if (g == 1) return prime;
  }
}

const RsaPrivateMaterial& rsa_material(const PrivateKey& key) {
  const auto* m = dynamic_cast<const RsaPrivateMaterial*>(key.material.get());
  if (m == nullptr) throw UnsupportedScheme("private key does not hold RSA material");
  return *m;
}

}  // namespace

Bytes emsa_pkcs1_v15_sha256(const Digest& digest, std::size_t k) {
  const std::size_t t_len = kSha256DigestInfo.size() + digest.bytes.size();
  if (k < t_len + 11) throw std::invalid_argument("RSA modulus too short for PKCS#1 v1.5 SHA-256");
  Bytes em(k, 0xff);
  em[0] = 0x00;
  em[1] = 0x01;
  em[k - t_len - 1] = 0x00;
  std::copy(kSha256DigestInfo.begin(), kSha256DigestInfo.end(), em.begin() + static_cast<std::ptrdiff_t>(k - t_len));
  std::copy(digest.bytes.begin(), digest.bytes.end(), em.end() - 32);
  return em;
}

SignatureKeyPair RsaSha256Scheme::generate(unsigned key_bits, std::uint64_t seed) const {
  if (key_bits != 1024 && key_bits != 2048 && key_bits != 3072 && key_bits != 4096) {
    throw std::invalid_argument("unsupported RSA key size " + std::to_string(key_bits));
  }
  HashDrbg drbg(seed, "rsa-keygen");
  const BigInt e = 65537;
  const unsigned half = key_bits / 2;
  BigInt p = random_prime(drbg, half, e);
  BigInt q;
  do {
    q = random_prime(drbg, half, e);
  } while (q == p);
  if (p < q) std::swap(p, q);

  auto m = std::make_shared<RsaPrivateMaterial>();
  m->n = p * q;
  m->e = e;
  m->p = p;
  m->q = q;
  BigInt pm1 = p - 1;
  BigInt qm1 = q - 1;
  BigInt lambda;
  mpz_lcm(lambda.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
  if (mpz_invert(m->d.get_mpz_t(), e.get_mpz_t(), lambda.get_mpz_t()) == 0) {
    throw std::logic_error("RSA exponent not invertible");
  }
  m->dp = m->d % pm1;
  m->dq = m->d % qm1;
  mpz_invert(m->qinv.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());

  SignatureKeyPair pair;
  pair.pub = PublicKey{std::string(kRsaSha256), to_bytes_be(m->n), to_bytes_be(m->e)};
  pair.priv = PrivateKey{std::string(kRsaSha256), std::move(m)};
  return pair;
}

Signature RsaSha256Scheme::sign(const Digest& digest, const PrivateKey& key) const {
  const RsaPrivateMaterial& m = rsa_material(key);
  const std::size_t k = (mpz_sizeinbase(m.n.get_mpz_t(), 2) + 7) / 8;
  const BigInt msg = from_bytes_be(emsa_pkcs1_v15_sha256(digest, k));

  // CRT: s = s2 + q * (qinv * (s1 - s2) mod p)
  BigInt s1, s2;
  mpz_powm_sec(s1.get_mpz_t(), msg.get_mpz_t(), m.dp.get_mpz_t(), m.p.get_mpz_t());
  mpz_powm_sec(s2.get_mpz_t(), msg.get_mpz_t(), m.dq.get_mpz_t(), m.q.get_mpz_t());
  BigInt h = (m.qinv * (s1 - s2)) % m.p;
  if (h < 0) h += m.p;
  const BigInt s = s2 + m.q * h;
  return Signature{to_bytes_be(s, k)};
}

bool RsaSha256Scheme::verify(const Digest& digest, const Signature& sig, const PublicKey& key) const {
  if (key.scheme != kRsaSha256 || key.modulus.empty() || key.exponent.empty()) return false;
  const BigInt n = from_bytes_be(key.modulus);
  const BigInt e = from_bytes_be(key.exponent);
  if (n < 3 || e < 3) return false;
  const std::size_t k = (mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8;
  if (sig.bytes.size() != k || k < 62) return false;
  const BigInt s = from_bytes_be(sig.bytes);
  if (s >= n) return false;
  BigInt recovered;
  mpz_powm(recovered.get_mpz_t(), s.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
  const Bytes em = to_bytes_be(recovered, k);
  if (em.size() != k) return false;
  const Bytes expected = emsa_pkcs1_v15_sha256(digest, k);
  return CRYPTO_memcmp(em.data(), expected.data(), k) == 0;
}

}  // namespace cfafl::crypto
