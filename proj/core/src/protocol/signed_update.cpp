#include "cfafl/protocol/signed_update.hpp"

#include <limits>

#include "cfafl/crypto/encoding.hpp"

namespace cfafl::protocol {

crypto::Digest update_digest(const model::ParameterVector& update, std::uint32_t round, std::string_view client_id,
                             std::uint64_t data_size) {
  return crypto::sha256(crypto::canonical_encode(update, round, client_id, data_size));
}

Bytes serialize(const SignedUpdate& msg) {
  const Bytes body = msg.encrypted()
                         ? crypto::canonical_encode(std::span<const double>{}, msg.round, msg.client_id, msg.data_size)
                         : crypto::canonical_encode(msg.update, msg.round, msg.client_id, msg.data_size);
  const Bytes report = cfa::serialize_report(msg.attestation);
  if (msg.signature.bytes.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("signature too long to serialise");
  }

  ByteWriter w;
  w.u8(kSignedUpdateVersion);
  w.u32(static_cast<std::uint32_t>(body.size()));
  w.raw(body);
  w.raw(msg.digest.view());
  w.u16(static_cast<std::uint16_t>(msg.signature.bytes.size()));
  w.raw(msg.signature.bytes);
  w.u32(static_cast<std::uint32_t>(report.size()));
  w.raw(report);
  if (msg.envelope) {
    w.u8(1);
    w.raw(msg.envelope->nonce);
    w.u32(static_cast<std::uint32_t>(msg.envelope->ciphertext.size()));
    w.raw(msg.envelope->ciphertext);
    w.raw(msg.envelope->tag.view());
  } else {
    w.u8(0);
  }
  return std::move(w).take();
}

SignedUpdate parse_signed_update(ByteView wire, const model::Layout& layout) {
  ByteReader r(wire);
  if (r.u8() != kSignedUpdateVersion) throw DecodeError("unsupported signed update version");

  crypto::CanonicalUpdate body = crypto::canonical_decode(r.raw(r.u32()));
  SignedUpdate msg;
  msg.client_id = std::move(body.client_id);
  msg.round = body.round;
  msg.data_size = body.data_size;
  msg.digest = crypto::Digest::from(r.raw(32));
  ByteView sig = r.raw(r.u16());
  msg.signature.bytes.assign(sig.begin(), sig.end());
  msg.attestation = cfa::parse_report(r.raw(r.u32()));

  const std::uint8_t has_envelope = r.u8();
  if (has_envelope > 1) throw DecodeError("invalid envelope flag");
  if (has_envelope == 1) {
    crypto::CipherEnvelope env;
    ByteView nonce = r.raw(env.nonce.size());
    std::copy(nonce.begin(), nonce.end(), env.nonce.begin());
    ByteView ct = r.raw(r.u32());
    env.ciphertext.assign(ct.begin(), ct.end());
    env.tag = crypto::Digest::from(r.raw(32));
    msg.envelope = std::move(env);
    if (!body.values.empty()) throw DecodeError("encrypted message carries clear parameters");
  } else {
    if (body.values.size() != layout.total()) throw DecodeError("parameter count does not match model layout");
    try {
      msg.update = model::ParameterVector(layout, std::move(body.values));
    } catch (const NonFiniteError&) {
      throw DecodeError("non-finite parameter on the wire");
    }
  }
  r.expect_done();
  return msg;
}

}  // namespace cfafl::protocol
