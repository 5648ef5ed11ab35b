#include "cfafl/protocol/registry.hpp"

namespace cfafl::protocol {

void KeyRegistry::register_client(const std::string& client_id, crypto::PublicKey sig_pub, crypto::BigInt dh_pub,
                                  std::uint32_t round) {
  if (entries_.contains(client_id)) throw DuplicateClient("client '" + client_id + "' is already registered");
  entries_.emplace(client_id, RegistryEntry{std::move(sig_pub), std::move(dh_pub), round});
}

const RegistryEntry* KeyRegistry::find(std::string_view client_id) const {
  auto it = entries_.find(client_id);
  return it == entries_.end() ? nullptr : &it->second;
}

const RegistryEntry& KeyRegistry::at(std::string_view client_id) const {
  if (const RegistryEntry* e = find(client_id)) return *e;
  throw UnknownClient("client '" + std::string(client_id) + "' is not registered");
}

std::vector<std::string> KeyRegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

KeyRegistry register_client(KeyRegistry registry, const std::string& client_id, crypto::PublicKey sig_pub,
                            crypto::BigInt dh_pub) {
  registry.register_client(client_id, std::move(sig_pub), std::move(dh_pub));
  return registry;
}

}  // namespace cfafl::protocol
