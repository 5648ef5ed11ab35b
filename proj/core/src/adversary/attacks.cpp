#include "cfafl/adversary/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cfafl/crypto/signature.hpp"
#include "cfafl/rng.hpp"

namespace cfafl::adversary {

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::None:
      return "none";
    case AttackKind::ModelPoison:
      return "model-poison";
    case AttackKind::DataPoison:
      return "data-poison";
    case AttackKind::Tamper:
      return "tamper";
    case AttackKind::Sybil:
      return "sybil";
    case AttackKind::Replay:
      return "replay";
  }
  return "none";
}

std::optional<AttackKind> parse_attack_kind(std::string_view name) {
  for (AttackKind k : {AttackKind::None, AttackKind::ModelPoison, AttackKind::DataPoison, AttackKind::Tamper,
                       AttackKind::Sybil, AttackKind::Replay}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double default_strength(AttackKind kind) { return kind == AttackKind::DataPoison ? 0.5 : -10.0; }

void AttackConfig::validate() const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("attack fraction must lie in [0, 1]");
  if (!std::isfinite(strength)) throw std::invalid_argument("attack strength must be finite");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw std::invalid_argument("attack noise must be finite and >= 0");
  if (kind == AttackKind::DataPoison && !(strength >= 0.0 && strength <= 1.0)) {
    throw std::invalid_argument("label-flip fraction must lie in [0, 1]");
  }
}

std::size_t AttackConfig::affected_count(std::size_t num_clients) const {
  if (kind == AttackKind::None) return 0;
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(num_clients) + 0.5));
}

std::vector<std::string> choose_compromised(std::vector<std::string> ids, std::size_t count, std::uint64_t seed) {
  std::sort(ids.begin(), ids.end());
  Rng rng(derive_seed(seed, "compromised"));
  rng.shuffle(std::span<std::string>(ids));
  ids.resize(std::min(count, ids.size()));
  std::sort(ids.begin(), ids.end());
  return ids;
}

model::ParameterVector poison_update(const model::ParameterVector& update, double strength, double noise_scale,
                                     std::uint64_t seed) {
  model::ParameterVector out = update;
  const double sigma = std::abs(strength) * noise_scale;
  Rng rng(seed);
  for (double& v : out.mutable_values()) {
    v *= strength;
    if (sigma != 0.0) v += sigma * rng.normal();
  }
  out.check_finite();
  return out;
}

model::Dataset flip_labels(const model::Dataset& data, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("flip fraction must lie in [0, 1]");
  const std::size_t n = data.size();
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
  if (count == 0 || data.num_classes() < 2) return data;

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));

  std::vector<std::uint32_t> labels = data.labels();
  const std::uint64_t classes = data.num_classes();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = order[k];
    // Uniform over the other classes: skip past the current label.
    auto replacement = static_cast<std::uint32_t>(rng.uniform_below(classes - 1));
    if (replacement >= labels[i]) ++replacement;
    labels[i] = replacement;
  }
  return data.with_labels(std::move(labels));
}

Bytes tamper_bytes(ByteView msg, std::optional<std::size_t> bit_index, std::uint64_t seed) {
  if (msg.empty()) throw std::invalid_argument("cannot tamper with an empty payload");
  const std::size_t bits = msg.size() * 8;
  std::size_t bit = 0;
  if (bit_index) {
    if (*bit_index >= bits) throw std::invalid_argument("tamper bit index outside payload");
    bit = *bit_index;
  } else {
    Rng rng(seed);
    bit = static_cast<std::size_t>(rng.uniform_below(bits));
  }
  Bytes out(msg.begin(), msg.end());
  out[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
  return out;
}

std::vector<protocol::Client> spawn_sybil(std::size_t count, std::uint64_t seed, const SybilTemplate& tmpl) {
  if (count < 1) throw std::invalid_argument("sybil count must be >= 1");
  std::vector<protocol::Client> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t actor_seed = derive_seed(seed, "sybil", k);
    protocol::Client sybil("sybil-" + std::to_string(k), tmpl.data, tmpl.spec,
                           crypto::keygen_signature(tmpl.signature_scheme, tmpl.key_bits,
                                                    derive_seed(actor_seed, "signing")),
                           crypto::dh_keygen(tmpl.dh, derive_seed(actor_seed, "dh")), actor_seed);
    sybil.establish_session(tmpl.server_dh_public, tmpl.dh);
    const double strength = tmpl.strength;
    const double noise = tmpl.noise;
    sybil.set_post_train_hook([strength, noise, actor_seed](const model::ParameterVector& u, std::uint32_t round) {
      return poison_update(u, strength, noise, derive_seed(actor_seed, "poison", round));
    });
    out.push_back(std::move(sybil));
  }
  return out;
}

protocol::SignedUpdate replay(const protocol::SignedUpdate& captured, std::uint32_t at_round) {
  if (captured.round > at_round) throw std::invalid_argument("cannot replay a message from a future round");
  return captured;
}

}  // namespace cfafl::adversary
