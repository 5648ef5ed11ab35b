#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfafl/crypto/hash.hpp"
#include "cfafl/model/parameter_vector.hpp"
#include "cfafl/protocol/signed_update.hpp"

namespace cfafl::protocol {

struct WeightedUpdate {
  std::string client_id;
  std::uint64_t data_size = 0;
  model::ParameterVector update;
};

/// Data-size weighted mean sum(|D_i| * u_i) / sum(|D_i|), accumulated in
/// ascending client id order (stable for equal ids) so the result is bit
/// stable regardless of arrival order. Returns nullopt for an empty list or
/// zero total weight: the global model stays unchanged this round.
std::optional<model::ParameterVector> aggregate(std::span<const WeightedUpdate> verified);
std::optional<model::ParameterVector> aggregate(std::span<const SignedUpdate> verified);

struct GlobalModelState {
  /// Number of completed rounds.
  std::uint32_t round = 0;
  model::ParameterVector params;
  /// Digest of every applied global update, in order.
  std::vector<crypto::Digest> history;
};

/// params += delta, round += 1, digest of delta appended to history.
/// Throws LayoutMismatch, or NonFiniteError leaving `state` untouched.
GlobalModelState apply_global(const GlobalModelState& state, const model::ParameterVector& delta);

/// Digest recorded in the history for a global update applied at `round`.
crypto::Digest global_update_digest(const model::ParameterVector& delta, std::uint32_t round);

}  // namespace cfafl::protocol
