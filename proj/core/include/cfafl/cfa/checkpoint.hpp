#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cfafl/bytes.hpp"
#include "cfafl/crypto/hash.hpp"

namespace cfafl::cfa {

/// Protocol-level execution points. Numeric values are the wire encoding.
enum class Label : std::uint8_t {
  RoundStart = 0,
  TrainBegin = 1,
  TrainEnd = 2,
  UpdateHashed = 3,
  UpdateSigned = 4,
  UpdateSent = 5,
  ServerReceived = 6,
  ServerVerified = 7,
  Aggregated = 8,
  GlobalApplied = 9,
  RoundEnd = 10,
};

inline constexpr std::size_t kLabelCount = 11;

/// Upper-case wire name, e.g. "TRAIN_BEGIN".
std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view name);

struct Checkpoint {
  Label label = Label::RoundStart;
  std::string actor;
  std::uint32_t round = 0;
  /// Digest of the data observed at this point; all zero when nothing is measured.
  crypto::Digest measurement{};

  bool operator==(const Checkpoint&) const = default;
};

/// u8 label, u32 round, u16 actor length + actor bytes, 32-byte measurement.
Bytes encode(const Checkpoint& cp);
void encode_to(ByteWriter& w, const Checkpoint& cp);
/// Throws DecodeError on truncation or an unknown label.
Checkpoint decode_checkpoint(ByteReader& r);

}  // namespace cfafl::cfa
