#include <gtest/gtest.h>

#include "lunc/simulator.hpp"
#include "lunc/state_hash.hpp"
#include "support/printers.hpp"
#include "support/fixtures.hpp"

using lunc::Coin;
using lunc::Coins;
using lunc::ConsensusStatus;
using lunc::Errc;
using lunc::Height;
using lunc::Ratio;
using lunc::Scenario;
using lunc::ScenarioEvent;
using lunc::SoftwareVersion;
using fixtures::kLunc;

namespace {

constexpr Height kGenesis = 7'684'480;
constexpr Height kFirstOpen = 7'684'490;  // delegations reopen on v21

lunc::ChainState split_chain(lunc::Amount v21_power, lunc::Amount v20_power) {
  return fixtures::ChainBuilder()
      .height(kGenesis)
      .gates(fixtures::testnet_gates())
      .account("sniper", 1'000 * kLunc)
      .account("alice", 1'000 * kLunc)
      .validator("val1", v21_power * kLunc, SoftwareVersion::kV21)
      .validator("val2", v20_power * kLunc, SoftwareVersion::kV20)
      .validator("val3", 10 * kLunc, SoftwareVersion::kV21)
      .build();
}

lunc::Tx delegation() {
  return fixtures::make_tx("sniper", lunc::DelegateMsg{"sniper", "val3", Coin{"uluna", 1 * kLunc}},
                           Coins{{"uluna", 30'000}});
}

lunc::Tx payment(lunc::Amount amount) {
  return fixtures::make_tx("alice", lunc::SendMsg{"alice", "bob", Coins{{"uluna", amount}}}, Coins{{"uluna", 30'000}});
}

/// Advances empty blocks until the state's height is `h`.
void advance_to(lunc::ChainState& state, Height h) {
  while (state.height < h) ASSERT_TRUE(lunc::produce_block(state, state.height + 1, {}));
}

}  // namespace

TEST(VersionBehaviorTest, OnlyGatesAndCapDiffer) {
  const auto state = split_chain(50, 40);
  const lunc::Msg delegate = delegation().msgs.front();
  EXPECT_TRUE(lunc::version_behavior(SoftwareVersion::kV21, delegate, kFirstOpen, state));
  EXPECT_FALSE(lunc::version_behavior(SoftwareVersion::kV20, delegate, kFirstOpen, state));
  EXPECT_FALSE(lunc::version_behavior(SoftwareVersion::kV21, delegate, kFirstOpen - 1, state));
  const lunc::Msg send = payment(5).msgs.front();
  EXPECT_TRUE(lunc::version_behavior(SoftwareVersion::kV20, send, kFirstOpen, state));
  EXPECT_TRUE(lunc::version_behavior(SoftwareVersion::kV21, send, kFirstOpen, state));
}

TEST(ProduceBlockTest, HeightMustFollow) {
  auto state = split_chain(50, 40);
  EXPECT_EQ(lunc::produce_block(state, kGenesis + 2, {}).code(), Errc::kInternalInconsistency);
}

TEST(ProduceBlockTest, DivergenceBelowTwoThirdsHalts) {
  auto state = split_chain(50, 40);  // v21 holds 60 of 100
  advance_to(state, kFirstOpen - 1);
  const auto before = state;
  auto block = lunc::produce_block(state, kFirstOpen, {delegation()});
  ASSERT_TRUE(block);
  EXPECT_EQ(block->outcome.status, ConsensusStatus::kHalted);
  EXPECT_EQ(block->outcome.halt_height, kFirstOpen);
  EXPECT_EQ(block->outcome.compatible_power_fraction, Ratio(3, 5));
  EXPECT_EQ(state, before);
}

TEST(ProduceBlockTest, DivergenceAtTwoThirdsCommitsMajorityBranch) {
  auto state = split_chain(190, 100);  // v21 holds 200 of 300
  advance_to(state, kFirstOpen - 1);
  auto block = lunc::produce_block(state, kFirstOpen, {delegation()});
  ASSERT_TRUE(block);
  EXPECT_EQ(block->outcome.status, ConsensusStatus::kCommitted);
  EXPECT_EQ(block->outcome.compatible_power_fraction, Ratio(2, 3));
  ASSERT_EQ(block->tx_results.size(), 1u);
  EXPECT_TRUE(block->tx_results[0].succeeded());
  EXPECT_EQ(state.height, kFirstOpen);
  EXPECT_EQ(state.staking.delegation_shares("sniper", "val3"), 1 * kLunc);
}

TEST(ProduceBlockTest, AgreeingVersionsDoNotHalt) {
  auto state = split_chain(50, 40);
  advance_to(state, kFirstOpen - 1);
  auto block = lunc::produce_block(state, kFirstOpen, {payment(7)});
  ASSERT_TRUE(block);
  EXPECT_EQ(block->outcome.status, ConsensusStatus::kCommitted);
  EXPECT_EQ(block->outcome.compatible_power_fraction, Ratio(1));
  EXPECT_EQ(state.ledger.balance("bob").amount_of("uluna"), 7u);
}

TEST(ProduceBlockTest, PrecommitFractionIsClamped) {
  auto state = split_chain(190, 100);
  auto block = lunc::produce_block(state, kGenesis + 1, {});
  ASSERT_TRUE(block);
  EXPECT_EQ(block->precommit_power_fraction, Ratio(1));
  block = lunc::produce_block(state, kGenesis + 2, {}, Ratio(3, 4));
  ASSERT_TRUE(block);
  EXPECT_EQ(block->precommit_power_fraction, Ratio(3, 4));
}

TEST(ProposerTest, WeightedRoundRobin) {
  auto state = fixtures::ChainBuilder().validator("a", 3 * kLunc).validator("b", 1 * kLunc).build();
  std::map<std::string, int> picks;
  for (int i = 0; i < 400; ++i) ++picks[lunc::select_proposer(state)];
  EXPECT_EQ(picks["a"], 300);
  EXPECT_EQ(picks["b"], 100);
}

class RunnerTest : public ::testing::Test {
 protected:
  Scenario scenario(Height end) const {
    Scenario s;
    s.name = "unit";
    s.end_height = end;
    return s;
  }
};

TEST_F(RunnerTest, SniperHaltsAndUpgradeResumes) {
  const auto genesis = split_chain(50, 40);
  Scenario s = scenario(kFirstOpen + 20);
  s.events.push_back({kFirstOpen - 50, lunc::SniperArmEvent{.target_height = kFirstOpen, .tx = delegation(),
                                                             .inclusion_delay = std::nullopt, .label = "sniper"}});
  s.events.push_back({kFirstOpen + 2, lunc::UpgradeValidatorEvent{"val2", SoftwareVersion::kV21}});

  const auto report = lunc::run_scenario(genesis, s);
  ASSERT_TRUE(report.invariant) << report.invariant.describe();
  ASSERT_EQ(report.halts.size(), 1u);
  EXPECT_EQ(report.halts[0].height, kFirstOpen + 2);
  EXPECT_EQ(report.halts[0].compatible_power_fraction, Ratio(3, 5));
  EXPECT_TRUE(report.halts[0].resumed);
  EXPECT_EQ(report.halts[0].recovery_events, 1u);
  EXPECT_FALSE(report.halted_at_end);
  ASSERT_EQ(report.txs.size(), 1u);
  EXPECT_EQ(report.txs[0].height, kFirstOpen + 2);
  EXPECT_TRUE(report.txs[0].exec.is_ok());
  EXPECT_EQ(report.final_height, kFirstOpen + 20);
}

TEST_F(RunnerTest, StrictHaltStops) {
  const auto genesis = split_chain(50, 40);
  Scenario s = scenario(kFirstOpen + 20);
  s.events.push_back({kFirstOpen, lunc::SubmitTxEvent{.tx = delegation(), .delay = 0, .label = "d"}});
  s.events.push_back({kFirstOpen + 5, lunc::UpgradeValidatorEvent{"val2", SoftwareVersion::kV21}});
  const auto report = lunc::run_scenario(genesis, s, {.strict_halt = true});
  EXPECT_TRUE(report.halted_at_end);
  EXPECT_EQ(report.final_height, kFirstOpen - 1);
}

TEST_F(RunnerTest, HaltWithoutRecoveryEndsRun) {
  const auto genesis = split_chain(50, 40);
  Scenario s = scenario(kFirstOpen + 20);
  s.events.push_back({kFirstOpen, lunc::SubmitTxEvent{.tx = delegation(), .delay = 0, .label = "d"}});
  const auto report = lunc::run_scenario(genesis, s);
  EXPECT_TRUE(report.halted_at_end);
  ASSERT_EQ(report.halts.size(), 1u);
  EXPECT_FALSE(report.halts[0].resumed);
}

TEST_F(RunnerTest, UpgradeBindsFromNextBlock) {
  const auto genesis = split_chain(50, 40);
  Scenario s = scenario(kFirstOpen + 3);
  s.events.push_back({kFirstOpen - 1, lunc::UpgradeValidatorEvent{"val2", SoftwareVersion::kV21}});
  s.events.push_back({kFirstOpen, lunc::SubmitTxEvent{.tx = delegation(), .delay = 0, .label = "d"}});
  const auto report = lunc::run_scenario(genesis, s);
  EXPECT_TRUE(report.halts.empty());
  ASSERT_EQ(report.txs.size(), 1u);
  EXPECT_TRUE(report.txs[0].exec.is_ok());

  // The same upgrade at the block's own height arrives too late for it.
  s.events[0].at_height = kFirstOpen;
  const auto late = lunc::run_scenario(genesis, s);
  ASSERT_EQ(late.halts.size(), 1u);
  EXPECT_EQ(late.halts[0].recovery_events, 1u);
  EXPECT_EQ(late.final_hash, report.final_hash);
}

TEST_F(RunnerTest, InclusionDelay) {
  const auto genesis = split_chain(50, 40);
  Scenario s = scenario(kGenesis + 20);
  s.events.push_back({kGenesis + 5, lunc::SubmitTxEvent{.tx = payment(1), .delay = 3, .label = "p"}});
  s.events.push_back({kGenesis + 1, lunc::SniperArmEvent{.target_height = kGenesis + 10, .tx = payment(2),
                                                         .inclusion_delay = 4, .label = "s"}});
  const auto report = lunc::run_scenario(genesis, s);
  ASSERT_EQ(report.txs.size(), 2u);
  EXPECT_EQ(report.txs[0].label, "p");
  EXPECT_EQ(report.txs[0].height, kGenesis + 8);
  EXPECT_EQ(report.txs[1].label, "s");
  EXPECT_EQ(report.txs[1].height, kGenesis + 14);
}

TEST_F(RunnerTest, RollbackRestoresSnapshot) {
  const auto genesis = split_chain(50, 40);
  Scenario with = scenario(kGenesis + 30);
  with.events.push_back({kGenesis + 3, lunc::SubmitTxEvent{.tx = payment(10), .delay = 0, .label = "kept"}});
  with.events.push_back({kGenesis + 12, lunc::SubmitTxEvent{.tx = payment(20), .delay = 0, .label = "undone"}});
  with.events.push_back({kGenesis + 15, lunc::RollbackToEvent{kGenesis + 10}});

  Scenario without = scenario(kGenesis + 30);
  without.events.push_back(with.events[0]);

  const auto a = lunc::run_scenario(genesis, with);
  const auto b = lunc::run_scenario(genesis, without);
  ASSERT_TRUE(a.invariant);
  EXPECT_EQ(a.final_state.ledger.balance("bob").amount_of("uluna"), 10u);
  EXPECT_EQ(a.final_hash, b.final_hash);
  for (const auto& block : a.blocks) {
    EXPECT_TRUE(block.height <= kGenesis + 10 || block.tx_count == 0);
  }
}

TEST_F(RunnerTest, ReportIntervalThinsEmptyBlocks) {
  const auto genesis = split_chain(50, 40);
  Scenario s = scenario(kGenesis + 95);
  s.report_interval = 10;
  s.events.push_back({kGenesis + 33, lunc::SubmitTxEvent{.tx = payment(1), .delay = 0, .label = "p"}});
  const auto report = lunc::run_scenario(genesis, s);
  std::vector<Height> heights;
  for (const auto& b : report.blocks) heights.push_back(b.height);
  std::vector<Height> expected;
  for (Height h = kGenesis + 1; h <= kGenesis + 95; ++h) {
    if (h % 10 == 0 || h == kGenesis + 33 || h == kGenesis + 95) expected.push_back(h);
  }
  EXPECT_EQ(heights, expected);
}

TEST_F(RunnerTest, RunsAreDeterministic) {
  const auto genesis = split_chain(50, 40);
  Scenario s = scenario(kGenesis + 60);
  for (Height h = kGenesis + 1; h < kGenesis + 60; h += 7) {
    s.events.push_back({h, lunc::SubmitTxEvent{.tx = payment(static_cast<lunc::Amount>(h % 97)), .delay = 1, .label = "p"}});
  }
  const auto a = lunc::run_scenario(genesis, s, {.record_hash_trajectory = true});
  const auto b = lunc::run_scenario(genesis, s, {.record_hash_trajectory = true});
  EXPECT_EQ(a.hash_trajectory.size(), 60u);
  EXPECT_EQ(a.hash_trajectory, b.hash_trajectory);
  EXPECT_EQ(a.final_state, b.final_state);
}

TEST(StateHashTest, SensitiveToEveryBalance) {
  const auto base = split_chain(50, 40);
  const auto h0 = lunc::state_hash(base);
  EXPECT_EQ(lunc::state_hash(base), h0);

  auto moved = base;
  ASSERT_TRUE(moved.ledger.transfer("alice", "bob", Coins{{"uluna", 1}}));
  EXPECT_NE(lunc::state_hash(moved), h0);

  auto upgraded = base;
  ASSERT_TRUE(lunc::upgrade_validator(upgraded, "val2", SoftwareVersion::kV21));
  EXPECT_NE(lunc::state_hash(upgraded), h0);

  auto taller = base;
  taller.height += 1;
  EXPECT_NE(lunc::state_hash(taller), h0);
  EXPECT_EQ(lunc::to_hex(h0).size(), 64u);
}
