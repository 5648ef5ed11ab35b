#include "cfafl/protocol/aggregate.hpp"

#include <algorithm>

#include "cfafl/crypto/encoding.hpp"

namespace cfafl::protocol {

std::optional<model::ParameterVector> aggregate(std::span<const WeightedUpdate> verified) {
  if (verified.empty()) return std::nullopt;

  std::vector<const WeightedUpdate*> ordered;
  ordered.reserve(verified.size());
  for (const WeightedUpdate& u : verified) ordered.push_back(&u);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const WeightedUpdate* a, const WeightedUpdate* b) { return a->client_id < b->client_id; });

  model::ParameterVector sum = model::ParameterVector::zeros(ordered.front()->update.layout());
  double total = 0.0;
  for (const WeightedUpdate* u : ordered) {
    const double weight = static_cast<double>(u->data_size);
    sum.add_scaled(u->update, weight);
    total += weight;
  }
  if (total <= 0.0) return std::nullopt;
  for (double& v : sum.mutable_values()) v /= total;
  sum.check_finite();
  return sum;
}

std::optional<model::ParameterVector> aggregate(std::span<const SignedUpdate> verified) {
  std::vector<WeightedUpdate> weighted;
  weighted.reserve(verified.size());
  for (const SignedUpdate& m : verified) {
    if (m.encrypted()) throw std::invalid_argument("aggregate needs decrypted updates");
    weighted.push_back(WeightedUpdate{m.client_id, m.data_size, m.update});
  }
  return aggregate(weighted);
}

crypto::Digest global_update_digest(const model::ParameterVector& delta, std::uint32_t round) {
  return crypto::sha256(crypto::canonical_encode(delta, round, "global", 0));
}

GlobalModelState apply_global(const GlobalModelState& state, const model::ParameterVector& delta) {
  GlobalModelState next = state;
  next.params += delta;
  next.round = state.round + 1;
  next.history.push_back(global_update_digest(delta, next.round));
  return next;
}

}  // namespace cfafl::protocol
