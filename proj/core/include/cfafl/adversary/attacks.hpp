#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfafl/bytes.hpp"
#include "cfafl/crypto/dh.hpp"
#include "cfafl/model/dataset.hpp"
#include "cfafl/model/model.hpp"
#include "cfafl/model/parameter_vector.hpp"
#include "cfafl/protocol/client.hpp"
#include "cfafl/protocol/signed_update.hpp"

namespace cfafl::adversary {

enum class AttackKind { None, ModelPoison, DataPoison, Tamper, Sybil, Replay };

std::string_view to_string(AttackKind kind);
std::optional<AttackKind> parse_attack_kind(std::string_view name);

struct AttackConfig {
  AttackKind kind = AttackKind::None;
  /// Share of clients compromised (Sybils: count relative to honest clients).
  double fraction = 0.25;
  /// Poison scale for model-poison and Sybil payloads, flip fraction for data-poison.
  double strength = -10.0;
  /// Gaussian noise scale for poisoned updates, multiplied by |strength|.
  double noise = 0.01;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when fraction is outside [0, 1] or any
  /// value is non-finite, or a data-poison strength is outside [0, 1].
  void validate() const;
  /// floor(fraction * num_clients + 0.5); 0 when kind is None.
  std::size_t affected_count(std::size_t num_clients) const;
};

/// Default strength per kind: -10 for model poisoning and Sybils, 0.5 for label flipping.
double default_strength(AttackKind kind);

/// Seeded choice of `count` ids out of `ids` (Fisher-Yates over sorted ids),
/// returned sorted.
std::vector<std::string> choose_compromised(std::vector<std::string> ids, std::size_t count, std::uint64_t seed);

/// strength * update + |strength| * noise_scale * N(0, 1) per entry.
model::ParameterVector poison_update(const model::ParameterVector& update, double strength, double noise_scale,
                                     std::uint64_t seed);

/// Reassigns exactly round(fraction * size) labels, chosen without
/// replacement, each to a uniformly random different class.
model::Dataset flip_labels(const model::Dataset& data, double fraction, std::uint64_t seed);

/// Copy of `msg` with one bit flipped. `bit_index` counts from the most
/// significant bit of byte 0; when absent a seeded random bit is chosen.
/// Throws std::invalid_argument for an empty message or an index past the end.
Bytes tamper_bytes(ByteView msg, std::optional<std::size_t> bit_index, std::uint64_t seed);

struct SybilTemplate {
  model::Dataset data;
  model::ModelSpec spec;
  std::string signature_scheme = "rsa-pkcs1v15-sha256";
  unsigned key_bits = 2048;
  crypto::DhParams dh = crypto::DhParams::modp2048();
  crypto::BigInt server_dh_public;
  /// Poison scale applied to every Sybil update; 1.0 with zero noise leaves it honest-looking.
  double strength = -10.0;
  double noise = 0.01;
};

/// `count` actors named "sybil-<k>" with self-generated keys. They are never
/// registered; their session keys come from their own DH values, which the
/// server has never seen.
std::vector<protocol::Client> spawn_sybil(std::size_t count, std::uint64_t seed, const SybilTemplate& tmpl);

/// Resubmits a captured update unmodified at `at_round`.
/// Throws std::invalid_argument when the capture is newer than `at_round`.
protocol::SignedUpdate replay(const protocol::SignedUpdate& captured, std::uint32_t at_round);

}  // namespace cfafl::adversary
