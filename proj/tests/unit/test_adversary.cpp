#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cfafl/adversary/attacks.hpp"
#include "cfafl/protocol/federation.hpp"
#include "fixtures.hpp"

using namespace cfafl;
using namespace cfafl::adversary;
using model::Layout;
using model::ParameterVector;

TEST(AttackKind, NamesRoundTrip) {
  for (auto k : {AttackKind::None, AttackKind::ModelPoison, AttackKind::DataPoison, AttackKind::Tamper,
                 AttackKind::Sybil, AttackKind::Replay}) {
    EXPECT_EQ(parse_attack_kind(to_string(k)), k);
  }
  EXPECT_EQ(to_string(AttackKind::ModelPoison), "model-poison");
  EXPECT_FALSE(parse_attack_kind("poison"));
}

TEST(AttackConfig, CountsAndValidation) {
  AttackConfig c;
  c.kind = AttackKind::ModelPoison;
  c.fraction = 0.25;
  EXPECT_EQ(c.affected_count(4), 1u);
  EXPECT_EQ(c.affected_count(10), 3u);
  EXPECT_EQ(c.affected_count(1), 0u);
  c.fraction = 0.5;
  EXPECT_EQ(c.affected_count(3), 2u);
  c.kind = AttackKind::None;
  EXPECT_EQ(c.affected_count(10), 0u);
  c.fraction = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.fraction = 0.5;
  c.kind = AttackKind::DataPoison;
  c.strength = 2.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.strength = NAN;
  c.kind = AttackKind::ModelPoison;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_EQ(default_strength(AttackKind::ModelPoison), -10.0);
  EXPECT_EQ(default_strength(AttackKind::DataPoison), 0.5);
}

TEST(ChooseCompromised, SeededSortedSubset) {
  const std::vector<std::string> ids{"d", "a", "c", "b", "e"};
  const auto a = choose_compromised(ids, 2, 9);
  EXPECT_EQ(a, choose_compromised(ids, 2, 9));
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(choose_compromised(ids, 5, 1), (std::vector<std::string>{"a", "b", "c", "d", "e"}));
  EXPECT_TRUE(choose_compromised(ids, 0, 1).empty());
  std::vector<std::string> shuffled{"e", "b", "a", "d", "c"};
  EXPECT_EQ(choose_compromised(shuffled, 2, 9), a);
  std::set<std::vector<std::string>> distinct;
  for (std::uint64_t s = 0; s < 40; ++s) distinct.insert(choose_compromised(ids, 2, s));
  EXPECT_GT(distinct.size(), 5u);
}

TEST(PoisonUpdate, ScalingAndNoise) {
  const Layout l({{"w", 1, 3}});
  const ParameterVector u(l, {1.0, -2.0, 0.5});
  EXPECT_TRUE(poison_update(u, 1.0, 0.0, 3).bitwise_equal(u));
  EXPECT_TRUE(poison_update(u, -10.0, 0.0, 3).bitwise_equal(ParameterVector(l, {-10.0, 20.0, -5.0})));
  EXPECT_TRUE(poison_update(u, -10.0, 0.01, 3).bitwise_equal(poison_update(u, -10.0, 0.01, 3)));

  const Layout big({{"w", 1, 20000}});
  const ParameterVector zero(big);
  const ParameterVector noisy = poison_update(zero, -10.0, 0.01, 5);
  double sq = 0.0;
  for (double v : noisy.values()) sq += v * v;
  EXPECT_NEAR(std::sqrt(sq / 20000.0), 0.1, 0.005);
}

TEST(FlipLabels, ExactCountAndDifferentClass) {
  const auto parts = model::generate_synthetic(1, 100, 2, 4, 3.0, 1);
  const model::Dataset flipped = flip_labels(parts[0], 0.3, 7);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < flipped.size(); ++i) changed += flipped.label(i) != parts[0].label(i);
  EXPECT_EQ(changed, 30u);
  EXPECT_EQ(flipped.features(), parts[0].features());
  EXPECT_EQ(flip_labels(parts[0], 0.3, 7), flipped);
  EXPECT_EQ(flip_labels(parts[0], 0.0, 7), parts[0]);
  std::size_t all = 0;
  const model::Dataset every = flip_labels(parts[0], 1.0, 7);
  for (std::size_t i = 0; i < every.size(); ++i) all += every.label(i) != parts[0].label(i);
  EXPECT_EQ(all, 100u);
}

TEST(TamperBytes, BitIndexing) {
  const Bytes msg{0x00, 0x00};
  EXPECT_EQ(tamper_bytes(msg, 0, 0), (Bytes{0x80, 0x00}));
  EXPECT_EQ(tamper_bytes(msg, 7, 0), (Bytes{0x01, 0x00}));
  EXPECT_EQ(tamper_bytes(msg, 8, 0), (Bytes{0x00, 0x80}));
  EXPECT_THROW(tamper_bytes(msg, 16, 0), std::invalid_argument);
  EXPECT_THROW(tamper_bytes(Bytes{}, std::nullopt, 0), std::invalid_argument);
  const Bytes r = tamper_bytes(msg, std::nullopt, 4);
  EXPECT_EQ(r, tamper_bytes(msg, std::nullopt, 4));
  int diff = 0;
  for (std::size_t i = 0; i < 2; ++i) diff += __builtin_popcount(r[i] ^ msg[i]);
  EXPECT_EQ(diff, 1);
}

TEST(Replay, KeepsMessageAndRejectsFutureCaptures) {
  fixtures::Setup s(1);
  const auto m = s.produce(0);
  const auto r = adversary::replay(m, 4);
  EXPECT_EQ(protocol::serialize(r), protocol::serialize(m));
  EXPECT_THROW(adversary::replay(m, 0), std::invalid_argument);
}

TEST(Sybil, UnregisteredIdentities) {
  fixtures::Setup s(1);
  SybilTemplate t;
  t.data = s.clients[0].data();
  t.spec = s.spec;
  t.key_bits = fixtures::kTestKeyBits;
  t.server_dh_public = s.server.dh_public();
  const auto sybils = spawn_sybil(3, 77, t);
  ASSERT_EQ(sybils.size(), 3u);
  EXPECT_EQ(sybils[0].id(), "sybil-0");
  EXPECT_EQ(sybils[2].id(), "sybil-2");
  EXPECT_NE(sybils[0].signing_public(), sybils[1].signing_public());
  s.server.begin_round();
  for (const auto& sy : sybils) {
    const auto out = sy.client_round(s.server.state().params, 1, s.round_config());
    ASSERT_TRUE(out.update);
    const auto r = s.server.receive(protocol::serialize(*out.update));
    EXPECT_EQ(r.verdict.reason, protocol::VerdictReason::UnknownIdentity);
  }
  EXPECT_EQ(s.server.finish_round().aggregated, 0u);
}

TEST(Federation, CompromisedSetFollowsFraction) {
  auto shards = model::generate_synthetic(8, 30, 4, 3, 4.0, 1);
  protocol::FederationConfig cfg;
  cfg.spec = fixtures::small_spec();
  cfg.key_bits = fixtures::kTestKeyBits;
  cfg.attack.kind = AttackKind::ModelPoison;
  cfg.attack.fraction = 0.25;
  cfg.seed = 3;
  const auto eval = shards.back();
  protocol::Federation f(cfg, shards, eval);
  EXPECT_EQ(f.compromised().size(), 2u);
  EXPECT_TRUE(f.sybils().empty());
  cfg.attack.kind = AttackKind::Sybil;
  cfg.attack.fraction = 0.5;
  protocol::Federation g(cfg, shards, eval);
  EXPECT_EQ(g.sybils().size(), 4u);
  EXPECT_TRUE(g.compromised().empty());
}
