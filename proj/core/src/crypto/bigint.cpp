#include "cfafl/crypto/bigint.hpp"

#include <algorithm>
#include <stdexcept>

#include "cfafl/crypto/hash.hpp"

namespace cfafl::crypto {

Bytes to_bytes_be(const BigInt& value, std::size_t min_len) {
  if (value < 0) throw std::invalid_argument("negative big integer has no octet encoding");
  const std::size_t len = value == 0 ? 0 : (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
  Bytes out(std::max(len, min_len), 0);
  if (len > 0) {
    std::size_t written = 0;
    mpz_export(out.data() + (out.size() - len), &written, 1, 1, 1, 0, value.get_mpz_t());
  }
  return out;
}

BigInt from_bytes_be(ByteView bytes) {
  BigInt v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

HashDrbg::HashDrbg(std::uint64_t seed, std::string_view label) {
  ByteWriter w;
  w.u64(seed);
  w.u16(static_cast<std::uint16_t>(label.size()));
  w.raw(label);
  prefix_ = std::move(w).take();
}

Bytes HashDrbg::generate(std::size_t n) {
  Bytes out;
  out.reserve(n + 32);
  while (out.size() < n) {
    ByteWriter ctr;
    ctr.u64(counter_++);
    Digest block = sha256({prefix_, ctr.bytes()});
    out.insert(out.end(), block.bytes.begin(), block.bytes.end());
  }
  out.resize(n);
  return out;
}

}  // namespace cfafl::crypto
