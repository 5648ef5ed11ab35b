#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "cfafl/crypto/bigint.hpp"

namespace cfafl::crypto {

/// Finite-field Diffie-Hellman group. Simulation grade: no subgroup
/// validation beyond range checks, no side-channel hardening.
struct DhParams {
  BigInt p;
  BigInt g;

  /// Textbook group p = 23, g = 5.
  static DhParams toy();
  /// RFC 3526 2048-bit MODP group (id 14), g = 2.
  static DhParams modp2048();

  /// Throws std::invalid_argument unless p > 3 and 1 < g < p.
  void validate() const;
};

struct DhKeyPair {
  BigInt priv;
  BigInt pub;
};

struct SharedSecret {
  BigInt value;
};

struct SymmetricKey {
  std::array<std::uint8_t, 32> bytes{};
  bool operator==(const SymmetricKey&) const = default;
};

class DhError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// g^priv mod p.
BigInt dh_public(const DhParams& params, const BigInt& priv);
/// Private exponent drawn uniformly from [2, p-2] with a seeded DRBG.
DhKeyPair dh_keygen(const DhParams& params, std::uint64_t seed);
/// peer_public^priv mod p. Throws DhError unless peer_public is in [2, p-2].
SharedSecret dh_shared(const BigInt& priv, const BigInt& peer_public, const DhParams& params);
/// SHA-256 of the minimal big-endian encoding of the secret.
SymmetricKey kdf(const SharedSecret& secret);

}  // namespace cfafl::crypto
