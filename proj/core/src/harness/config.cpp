#include "cfafl/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cfafl/rng.hpp"

namespace cfafl::harness {

namespace {

std::string where(std::string_view key, std::size_t line) {
  std::string out = line > 0 ? "line " + std::to_string(line) + ": " : std::string{};
  return out + "'" + std::string(key) + "'";
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view v, std::size_t line) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(where(key, line) + ": expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v, std::size_t line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out)) {
    throw ConfigError(where(key, line) + ": expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v, std::size_t line) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError(where(key, line) + ": expected on/off, got '" + std::string(v) + "'");
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::size_t)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"rounds", [](auto& c, auto v, auto l) { c.rounds = parse_unsigned<std::uint32_t>("rounds", v, l); }},
      {"clients", [](auto& c, auto v, auto l) { c.clients = parse_unsigned<std::size_t>("clients", v, l); }},
      {"seed", [](auto& c, auto v, auto l) { c.seed = parse_unsigned<std::uint64_t>("seed", v, l); }},
      {"out", [](auto& c, auto v, auto) { c.out = std::string(v); }},
      {"security", [](auto& c, auto v, auto l) { c.security = parse_bool("security", v, l); }},
      {"encrypt", [](auto& c, auto v, auto l) { c.encrypt = parse_bool("encrypt", v, l); }},
      {"timing", [](auto& c, auto v, auto l) { c.timing = parse_bool("timing", v, l); }},
      {"model.kind",
       [](auto& c, auto v, auto l) {
         if (v == "logreg") {
           c.model_kind = model::ModelKind::LogisticRegression;
         } else if (v == "mlp") {
           c.model_kind = model::ModelKind::Mlp;
         } else {
           throw ConfigError(where("model.kind", l) + ": expected logreg or mlp, got '" + std::string(v) + "'");
         }
       }},
      {"model.hidden", [](auto& c, auto v, auto l) { c.hidden = parse_unsigned<std::size_t>("model.hidden", v, l); }},
      {"model.activation",
       [](auto& c, auto v, auto l) {
         if (v == "tanh") {
           c.activation = model::Activation::Tanh;
         } else if (v == "relu") {
           c.activation = model::Activation::Relu;
         } else {
           throw ConfigError(where("model.activation", l) + ": expected tanh or relu, got '" + std::string(v) + "'");
         }
       }},
      {"data.source",
       [](auto& c, auto v, auto l) {
         if (v == "synthetic") {
           c.source = DatasetSource::Synthetic;
         } else if (v == "idx") {
           c.source = DatasetSource::Idx;
         } else {
           throw ConfigError(where("data.source", l) + ": expected synthetic or idx, got '" + std::string(v) + "'");
         }
       }},
      {"data.per_client",
       [](auto& c, auto v, auto l) { c.per_client = parse_unsigned<std::size_t>("data.per_client", v, l); }},
      {"data.features", [](auto& c, auto v, auto l) { c.features = parse_unsigned<std::size_t>("data.features", v, l); }},
      {"data.classes", [](auto& c, auto v, auto l) { c.classes = parse_unsigned<std::size_t>("data.classes", v, l); }},
      {"data.separation", [](auto& c, auto v, auto l) { c.separation = parse_double("data.separation", v, l); }},
      {"data.holdout", [](auto& c, auto v, auto l) { c.holdout = parse_double("data.holdout", v, l); }},
      {"data.idx_images", [](auto& c, auto v, auto) { c.idx_images = std::string(v); }},
      {"data.idx_labels", [](auto& c, auto v, auto) { c.idx_labels = std::string(v); }},
      {"data.subset", [](auto& c, auto v, auto l) { c.subset = parse_unsigned<std::size_t>("data.subset", v, l); }},
      {"train.lr", [](auto& c, auto v, auto l) { c.learning_rate = parse_double("train.lr", v, l); }},
      {"train.epochs", [](auto& c, auto v, auto l) { c.epochs = parse_unsigned<std::size_t>("train.epochs", v, l); }},
      {"train.batch",
       [](auto& c, auto v, auto l) {
         if (v == "full") {
           c.batch.reset();
         } else {
           c.batch = parse_unsigned<std::size_t>("train.batch", v, l);
         }
       }},
      {"attack.kind",
       [](auto& c, auto v, auto l) {
         auto kind = adversary::parse_attack_kind(v);
         if (!kind) {
           throw ConfigError(where("attack.kind", l) +
                             ": expected none, model-poison, data-poison, tamper, sybil or replay, got '" +
                             std::string(v) + "'");
         }
         c.attack_kind = *kind;
       }},
      {"attack.fraction", [](auto& c, auto v, auto l) { c.attack_fraction = parse_double("attack.fraction", v, l); }},
      {"attack.strength", [](auto& c, auto v, auto l) { c.attack_strength = parse_double("attack.strength", v, l); }},
      {"attack.noise", [](auto& c, auto v, auto l) { c.attack_noise = parse_double("attack.noise", v, l); }},
      {"attack.seed", [](auto& c, auto v, auto l) { c.attack_seed = parse_unsigned<std::uint64_t>("attack.seed", v, l); }},
      {"crypto.key_bits", [](auto& c, auto v, auto l) { c.key_bits = parse_unsigned<unsigned>("crypto.key_bits", v, l); }},
      {"crypto.dh_group", [](auto& c, auto v, auto) { c.dh_group = std::string(v); }},
  };
  return table;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value, std::size_t line) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError(where(key, line) + ": unknown key");
  it->second(cfg, value, line);
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value, got '" + stripped + "'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": missing key");
    if (!seen.insert(key).second) throw ConfigError(where(key, line) + ": duplicate key");
    set_config_value(cfg, key, value, line);
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (rounds < 1) throw ConfigError("'rounds' must be >= 1");
  if (clients < 1) throw ConfigError("'clients' must be >= 1");
  if (model_kind == model::ModelKind::Mlp && hidden < 1) throw ConfigError("'model.hidden' must be >= 1");
  if (!(holdout >= 0.0 && holdout < 1.0)) throw ConfigError("'data.holdout' must lie in [0, 1)");
  if (source == DatasetSource::Synthetic) {
    if (per_client < 2) throw ConfigError("'data.per_client' must be >= 2");
    if (features < 1) throw ConfigError("'data.features' must be >= 1");
    if (classes < 2) throw ConfigError("'data.classes' must be >= 2");
    if (separation < 0.0) throw ConfigError("'data.separation' must be >= 0");
  } else {
    if (idx_images.empty() || idx_labels.empty()) {
      throw ConfigError("'data.idx_images' and 'data.idx_labels' are required for the idx source");
    }
  }
  if (!(learning_rate >= 0.0)) throw ConfigError("'train.lr' must be >= 0");
  if (epochs < 1) throw ConfigError("'train.epochs' must be >= 1");
  if (batch && *batch < 1) throw ConfigError("'train.batch' must be >= 1 or full");
  if (!(attack_fraction >= 0.0 && attack_fraction <= 1.0)) throw ConfigError("'attack.fraction' must lie in [0, 1]");
  if (attack_noise < 0.0) throw ConfigError("'attack.noise' must be >= 0");
  if (attack_kind == adversary::AttackKind::DataPoison && attack_strength &&
      !(*attack_strength >= 0.0 && *attack_strength <= 1.0)) {
    throw ConfigError("'attack.strength' is a label-flip fraction for data-poison and must lie in [0, 1]");
  }
  if (key_bits != 1024 && key_bits != 2048 && key_bits != 3072 && key_bits != 4096) {
    throw ConfigError("'crypto.key_bits' must be 1024, 2048, 3072 or 4096");
  }
  if (dh_group != "modp2048" && dh_group != "toy") throw ConfigError("'crypto.dh_group' must be modp2048 or toy");
}

adversary::AttackConfig ExperimentConfig::attack() const {
  adversary::AttackConfig a;
  a.kind = attack_kind;
  a.fraction = attack_fraction;
  a.strength = attack_strength.value_or(adversary::default_strength(attack_kind));
  a.noise = attack_noise;
  a.seed = attack_seed.value_or(derive_seed(seed, "attack"));
  return a;
}

model::TrainingConfig ExperimentConfig::training() const {
  model::TrainingConfig t;
  t.learning_rate = learning_rate;
  t.epochs = epochs;
  t.batch_size = batch;
  t.seed = seed;
  return t;
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "rounds = " << c.rounds << "\n"
    << "clients = " << c.clients << "\n"
    << "seed = " << c.seed << "\n"
    << "out = " << c.out << "\n"
    << "security = " << (c.security ? "on" : "off") << "\n"
    << "encrypt = " << (c.encrypt ? "on" : "off") << "\n"
    << "timing = " << (c.timing ? "on" : "off") << "\n"
    << "model.kind = " << model::to_string(c.model_kind) << "\n"
    << "model.hidden = " << c.hidden << "\n"
    << "model.activation = " << model::to_string(c.activation) << "\n"
    << "data.source = " << (c.source == DatasetSource::Idx ? "idx" : "synthetic") << "\n"
    << "data.per_client = " << c.per_client << "\n"
    << "data.features = " << c.features << "\n"
    << "data.classes = " << c.classes << "\n"
    << "data.separation = " << fmt_double(c.separation) << "\n"
    << "data.holdout = " << fmt_double(c.holdout) << "\n";
  if (!c.idx_images.empty()) o << "data.idx_images = " << c.idx_images << "\n";
  if (!c.idx_labels.empty()) o << "data.idx_labels = " << c.idx_labels << "\n";
  o << "data.subset = " << c.subset << "\n"
    << "train.lr = " << fmt_double(c.learning_rate) << "\n"
    << "train.epochs = " << c.epochs << "\n"
    << "train.batch = " << (c.batch ? std::to_string(*c.batch) : std::string("full")) << "\n"
    << "attack.kind = " << adversary::to_string(c.attack_kind) << "\n"
    << "attack.fraction = " << fmt_double(c.attack_fraction) << "\n";
  if (c.attack_strength) o << "attack.strength = " << fmt_double(*c.attack_strength) << "\n";
  o << "attack.noise = " << fmt_double(c.attack_noise) << "\n";
  if (c.attack_seed) o << "attack.seed = " << *c.attack_seed << "\n";
  o << "crypto.key_bits = " << c.key_bits << "\n"
    << "crypto.dh_group = " << c.dh_group << "\n";
  return o.str();
}

}  // namespace cfafl::harness
