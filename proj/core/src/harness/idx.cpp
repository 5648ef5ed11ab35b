#include "cfafl/harness/idx.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <vector>

#include "cfafl/rng.hpp"

namespace cfafl::harness {

namespace {

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IdxError("cannot open '" + path + "'");
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IdxError("cannot read '" + path + "'");
  return data;
}

}  // namespace

model::Dataset parse_idx(ByteView images, ByteView labels, std::size_t subset, std::uint64_t seed) {
  std::uint32_t count = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<double> pixels;
  std::vector<std::uint32_t> ys;
  try {
    ByteReader img(images);
    if (img.u32() != kIdxImagesMagic) throw IdxError("images: wrong magic number");
    count = img.u32();
    rows = img.u32();
    cols = img.u32();
    const std::size_t features = static_cast<std::size_t>(rows) * cols;
    if (features == 0) throw IdxError("images: zero-sized image");
    if (img.remaining() != static_cast<std::size_t>(count) * features) {
      throw IdxError(img.remaining() < static_cast<std::size_t>(count) * features ? "images: truncated file"
                                                                                  : "images: trailing bytes");
    }
    const ByteView raw = img.raw(img.remaining());
    pixels.reserve(raw.size());
    for (std::uint8_t b : raw) pixels.push_back(static_cast<double>(b) / 255.0);

    ByteReader lab(labels);
    if (lab.u32() != kIdxLabelsMagic) throw IdxError("labels: wrong magic number");
    const std::uint32_t label_count = lab.u32();
    if (label_count != count) {
      throw IdxError("count mismatch: " + std::to_string(count) + " images, " + std::to_string(label_count) +
                     " labels");
    }
    if (lab.remaining() != count) {
      throw IdxError(lab.remaining() < count ? "labels: truncated file" : "labels: trailing bytes");
    }
    const ByteView raw_labels = lab.raw(count);
    ys.assign(raw_labels.begin(), raw_labels.end());
  } catch (const DecodeError&) {
    throw IdxError("truncated IDX header");
  }
  if (count == 0) throw IdxError("IDX files hold no examples");
  if (subset > count) {
    throw IdxError("subset " + std::to_string(subset) + " exceeds " + std::to_string(count) + " examples");
  }

  const std::size_t classes = static_cast<std::size_t>(*std::max_element(ys.begin(), ys.end())) + 1;
  model::Dataset all(std::move(pixels), std::move(ys), static_cast<std::size_t>(rows) * cols, classes);
  if (subset == 0) return all;

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, "idx-subset"));
  rng.shuffle(std::span<std::size_t>(order));
  order.resize(subset);
  return all.select(order);
}

model::Dataset load_idx(const std::string& images_path, const std::string& labels_path, std::size_t subset,
                        std::uint64_t seed) {
  const Bytes images = read_file(images_path);
  const Bytes labels = read_file(labels_path);
  return parse_idx(images, labels, subset, seed);
}

}  // namespace cfafl::harness
