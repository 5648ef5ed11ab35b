#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfafl/crypto/bigint.hpp"
#include "cfafl/crypto/signature.hpp"

namespace cfafl::protocol {

struct RegistryEntry {
  crypto::PublicKey sig_pub;
  crypto::BigInt dh_pub;
  std::uint32_t registered_round = 0;
};

class DuplicateClient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownClient : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Registered identities: client id -> signature key and DH public value.
class KeyRegistry {
 public:
  /// Throws DuplicateClient if `client_id` is already present.
  void register_client(const std::string& client_id, crypto::PublicKey sig_pub, crypto::BigInt dh_pub,
                       std::uint32_t round = 0);

  const RegistryEntry* find(std::string_view client_id) const;
  /// Throws UnknownClient.
  const RegistryEntry& at(std::string_view client_id) const;
  bool contains(std::string_view client_id) const { return find(client_id) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, RegistryEntry, std::less<>> entries_;
};

/// Value-returning form of KeyRegistry::register_client.
KeyRegistry register_client(KeyRegistry registry, const std::string& client_id, crypto::PublicKey sig_pub,
                            crypto::BigInt dh_pub);

}  // namespace cfafl::protocol
