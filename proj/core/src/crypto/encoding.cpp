#include "cfafl/crypto/encoding.hpp"

#include <limits>
#include <stdexcept>

namespace cfafl::crypto {

Bytes canonical_encode(std::span<const double> values, std::uint32_t round, std::string_view client_id,
                       std::uint64_t data_size) {
  if (client_id.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("client id longer than 65535 bytes");
  }
  ByteWriter w;
  w.u8(kCanonicalVersion);
  w.u32(round);
  w.u16(static_cast<std::uint16_t>(client_id.size()));
  w.raw(client_id);
  w.u64(data_size);
  w.u64(values.size());
  for (double v : values) w.f64(v);
  return std::move(w).take();
}

Bytes canonical_encode(const model::ParameterVector& update, std::uint32_t round, std::string_view client_id,
                       std::uint64_t data_size) {
  return canonical_encode(update.values(), round, client_id, data_size);
}

CanonicalUpdate canonical_decode(ByteView bytes) {
  ByteReader r(bytes);
  if (r.u8() != kCanonicalVersion) throw DecodeError("unsupported canonical encoding version");
  CanonicalUpdate out;
  out.round = r.u32();
  out.client_id = r.str(r.u16());
  out.data_size = r.u64();
  const std::uint64_t count = r.u64();
  if (count > r.remaining() / 8) throw DecodeError("parameter count exceeds payload");
  out.values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.values.push_back(r.f64());
  r.expect_done();
  return out;
}

}  // namespace cfafl::crypto
