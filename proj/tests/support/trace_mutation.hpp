#pragma once

#include <vector>

#include "cfafl/cfa/checkpoint.hpp"
#include "cfafl/cfa/log.hpp"
#include "cfafl/rng.hpp"

namespace fixtures {

enum class Mutation { Delete, Duplicate, Reorder, Substitute };

inline const char* to_string(Mutation m) {
  switch (m) {
    case Mutation::Delete: return "delete";
    case Mutation::Duplicate: return "duplicate";
    case Mutation::Reorder: return "reorder";
    case Mutation::Substitute: return "substitute";
  }
  return "?";
}

/// Applies one random single-entry mutation to `entries`. Substitution swaps
/// in a different label; reordering swaps two distinct positions. Requires at
/// least two entries.
template <typename T, typename LabelOf>
Mutation mutate(std::vector<T>& entries, cfafl::Rng& rng, LabelOf&& label_of) {
  const auto kind = static_cast<Mutation>(rng.uniform_below(4));
  const std::size_t n = entries.size();
  const std::size_t i = rng.uniform_below(n);
  switch (kind) {
    case Mutation::Delete:
      entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    case Mutation::Duplicate:
      entries.insert(entries.begin() + static_cast<std::ptrdiff_t>(i), entries[i]);
      break;
    case Mutation::Reorder: {
      std::size_t j = rng.uniform_below(n - 1);
      if (j >= i) ++j;
      std::swap(entries[i], entries[j]);
      break;
    }
    case Mutation::Substitute: {
      cfafl::cfa::Label& l = label_of(entries[i]);
      const auto old = static_cast<std::uint64_t>(l);
      std::uint64_t next = rng.uniform_below(cfafl::cfa::kLabelCount - 1);
      if (next >= old) ++next;
      l = static_cast<cfafl::cfa::Label>(next);
      break;
    }
  }
  return kind;
}

/// Mutates the stored entries as they are, leaving their chain digests alone.
inline Mutation mutate_raw(cfafl::cfa::AttestationReport& report, cfafl::Rng& rng) {
  auto entries = report.log.entries();
  const Mutation m = mutate(entries, rng, [](cfafl::cfa::LogEntry& e) -> cfafl::cfa::Label& { return e.checkpoint.label; });
  report.log = cfafl::cfa::CheckpointLog::from_entries(std::move(entries));
  return m;
}

/// Mutates the checkpoint sequence, then rebuilds the chain and re-seals it
/// with `key`, so only the control-flow check can catch the change.
inline Mutation mutate_resealed(cfafl::cfa::AttestationReport& report, const cfafl::crypto::PrivateKey& key,
                                cfafl::Rng& rng) {
  std::vector<cfafl::cfa::Checkpoint> cps;
  for (const auto& e : report.log.entries()) cps.push_back(e.checkpoint);
  const Mutation m = mutate(cps, rng, [](cfafl::cfa::Checkpoint& c) -> cfafl::cfa::Label& { return c.label; });
  cfafl::cfa::CheckpointLog log;
  for (auto& cp : cps) log.append(cp);
  report = cfafl::cfa::seal(log, key);
  return m;
}

}  // namespace fixtures
