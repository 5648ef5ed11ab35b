#include "cfafl/cfa/checkpoint.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace cfafl::cfa {

namespace {
constexpr std::array<std::string_view, kLabelCount> kNames = {
    "ROUND_START",     "TRAIN_BEGIN", "TRAIN_END",      "UPDATE_HASHED",
    "UPDATE_SIGNED",   "UPDATE_SENT", "SERVER_RECEIVED", "SERVER_VERIFIED",
    "AGGREGATED",      "GLOBAL_APPLIED", "ROUND_END"};
}

std::string_view to_string(Label label) { return kNames.at(static_cast<std::size_t>(label)); }

std::optional<Label> parse_label(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Label>(i);
  }
  return std::nullopt;
}

void encode_to(ByteWriter& w, const Checkpoint& cp) {
  if (cp.actor.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("actor id longer than 65535 bytes");
  }
  w.u8(static_cast<std::uint8_t>(cp.label));
  w.u32(cp.round);
  w.u16(static_cast<std::uint16_t>(cp.actor.size()));
  w.raw(cp.actor);
  w.raw(cp.measurement.view());
}

Bytes encode(const Checkpoint& cp) {
  ByteWriter w;
  encode_to(w, cp);
  return std::move(w).take();
}

Checkpoint decode_checkpoint(ByteReader& r) {
  Checkpoint cp;
  const std::uint8_t label = r.u8();
  if (label >= kLabelCount) throw DecodeError("unknown checkpoint label");
  cp.label = static_cast<Label>(label);
  cp.round = r.u32();
  cp.actor = r.str(r.u16());
  cp.measurement = crypto::Digest::from(r.raw(32));
  return cp;
}

}  // namespace cfafl::cfa
