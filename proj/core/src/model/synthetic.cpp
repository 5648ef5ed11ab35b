#include <cmath>
#include <numeric>

#include "cfafl/model/model.hpp"
#include "cfafl/rng.hpp"

namespace cfafl::model {

std::vector<Dataset> generate_synthetic(std::size_t num_clients, std::size_t per_client,
                                        std::size_t num_features, std::size_t num_classes,
                                        double separation, std::uint64_t seed) {
  if (num_clients < 1 || per_client < 1 || num_features < 1 || num_classes < 1) {
    throw std::invalid_argument("synthetic dataset counts must all be >= 1");
  }

  // Orthogonal means scaled by s/sqrt(2) are pairwise s apart. With more
  // classes than features the means sit on a line, adjacent ones s apart.
  std::vector<std::vector<double>> means(num_classes, std::vector<double>(num_features, 0.0));
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (num_classes <= num_features) {
      means[c][c] = separation / std::sqrt(2.0);
    } else {
      means[c][0] = separation * static_cast<double>(c);
    }
  }

  std::vector<Dataset> out;
  out.reserve(num_clients);
  for (std::size_t client = 0; client < num_clients; ++client) {
    Rng rng(derive_seed(seed, "synthetic-client", client));
    std::vector<std::uint32_t> labels(per_client);
    const std::size_t offset = static_cast<std::size_t>(rng.uniform_below(num_classes));
    for (std::size_t i = 0; i < per_client; ++i) {
      labels[i] = static_cast<std::uint32_t>((i + offset) % num_classes);
    }
    rng.shuffle(std::span<std::uint32_t>(labels));

    std::vector<double> features(per_client * num_features);
    for (std::size_t i = 0; i < per_client; ++i) {
      for (std::size_t f = 0; f < num_features; ++f) {
        features[i * num_features + f] = means[labels[i]][f] + rng.normal();
      }
    }
    out.emplace_back(std::move(features), std::move(labels), num_features, num_classes);
  }
  return out;
}

}  // namespace cfafl::model
