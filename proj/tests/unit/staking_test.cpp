#include <gtest/gtest.h>

#include "lunc/staking.hpp"
#include "support/printers.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using lunc::Coin;
using lunc::Errc;
using lunc::HeightGates;
using lunc::ProtocolRules;
using lunc::SoftwareVersion;
using fixtures::kLunc;

namespace {

const ProtocolRules kV21 = lunc::rules_for(SoftwareVersion::kV21);
const ProtocolRules kV20 = lunc::rules_for(SoftwareVersion::kV20);

}  // namespace

TEST(GateTest, MainnetHeights) {
  const HeightGates g = HeightGates::mainnet();
  EXPECT_EQ(g.staking_power_upgrade, 7'603'700);
  EXPECT_EQ(g.delegate_power_revert, 8'208'649);
  EXPECT_EQ(g.staking_power_revert, 8'905'758);
  EXPECT_TRUE(g.validate());
}

TEST(GateTest, DelegateWindowIsStrict) {
  const HeightGates g = HeightGates::mainnet();
  EXPECT_FALSE(g.delegate_disabled(7'603'700, kV21));
  EXPECT_TRUE(g.delegate_disabled(7'603'701, kV21));
  EXPECT_TRUE(g.delegate_disabled(8'208'648, kV21));
  EXPECT_FALSE(g.delegate_disabled(8'208'649, kV21));
  EXPECT_TRUE(g.delegate_disabled(8'208'649, kV20));
  EXPECT_TRUE(g.delegate_disabled(9'999'999, kV20));
}

TEST(GateTest, CreateValidatorWindowIsStrict) {
  const HeightGates g = HeightGates::mainnet();
  EXPECT_FALSE(g.create_validator_disabled(7'603'700, kV21));
  EXPECT_TRUE(g.create_validator_disabled(7'603'701, kV21));
  EXPECT_TRUE(g.create_validator_disabled(8'905'757, kV21));
  EXPECT_FALSE(g.create_validator_disabled(8'905'758, kV21));
  EXPECT_TRUE(g.create_validator_disabled(8'905'758, kV20));
}

TEST(GateTest, ProtectWindowIsHalfOpen) {
  const HeightGates g = HeightGates::mainnet();
  EXPECT_FALSE(g.in_protect_window(8'208'648));
  EXPECT_TRUE(g.in_protect_window(8'208'649));
  EXPECT_TRUE(g.in_protect_window(8'949'182));
  EXPECT_FALSE(g.in_protect_window(8'949'183));
}

TEST(GateTest, ValidateRejectsMisorderedGates) {
  HeightGates g;
  g.delegate_power_revert = g.staking_power_upgrade;
  EXPECT_FALSE(g.validate());
  g = HeightGates{};
  g.staking_power_revert = g.delegate_power_revert;
  EXPECT_FALSE(g.validate());
}

TEST(PowerCapTest, BoundaryIsInclusive) {
  const lunc::StakingParams params;
  // (v + d) / (T + d) with power_reduction 1e6.
  EXPECT_TRUE(lunc::check_power_cap(0, 3, 1 * kLunc, params));       // 1/4
  EXPECT_FALSE(lunc::check_power_cap(1, 3, 1 * kLunc, params));      // 2/4
  EXPECT_TRUE(lunc::check_power_cap(10, 100, 20 * kLunc, params));   // 30/120
  EXPECT_FALSE(lunc::check_power_cap(10, 100, 21 * kLunc, params));  // 31/121
  EXPECT_TRUE(lunc::check_power_cap(10, 100, kLunc - 1, params));    // sub-unit delta is d = 0
  EXPECT_TRUE(lunc::check_power_cap(0, 0, 0, params));
}

TEST(PowerCapTest, MatchesOracleOnGrid) {
  const lunc::StakingParams params;
  const auto cap = oracle::parse("1/4");
  for (lunc::Amount t = 1; t <= 40; ++t) {
    for (lunc::Amount v = 0; v <= t; ++v) {
      for (lunc::Amount d = 0; d <= 20; ++d) {
        EXPECT_EQ(lunc::check_power_cap(v, t, d * kLunc, params),
                  oracle::power_cap_accepts(v, t, d * kLunc, kLunc, cap))
            << lunc::to_string(v) << "/" << lunc::to_string(t) << " + " << lunc::to_string(d);
      }
    }
  }
}

TEST(PowerCapTest, Float32ModeDiffersOnlyNearTheBoundary) {
  lunc::StakingParams params;
  params.float32_cap_compat = true;
  EXPECT_TRUE(lunc::check_power_cap(10, 100, 20 * kLunc, params));
  EXPECT_FALSE(lunc::check_power_cap(10, 100, 30 * kLunc, params));
  // 16777219 rounds to 16777220 in float, so 4194305/16777219 looks like exactly 1/4.
  params.float32_cap_compat = false;
  EXPECT_FALSE(lunc::check_power_cap(4'194'305, 16'777'219, 0, params));
  params.float32_cap_compat = true;
  EXPECT_TRUE(lunc::check_power_cap(4'194'305, 16'777'219, 0, params));
}

class StakingTest : public ::testing::Test {
 protected:
  void SetUp() override {
    state = fixtures::ChainBuilder()
                .height(8'300'000)
                .account("whale", 1'000'000 * kLunc)
                .validator("val1", 10'000 * kLunc)
                .validator("val2", 10'000 * kLunc)
                .validator("val3", 10'000 * kLunc)
                .validator("val4", 10'000 * kLunc)
                .build();
  }

  lunc::Status delegate(const std::string& val, lunc::Amount amount, lunc::Height h,
                        const ProtocolRules& rules = kV21) {
    return state.staking.delegate(state.ledger, "whale", val, Coin{"uluna", amount}, h, rules);
  }

  lunc::ChainState state;
};

TEST_F(StakingTest, DelegationMovesTokensIntoBondedPool) {
  // Outside the protect window nothing caps the delegation.
  ASSERT_TRUE(delegate("val1", 50'000 * kLunc, 9'000'000));
  EXPECT_EQ(state.staking.find_validator("val1")->tokens, 60'000 * kLunc);
  EXPECT_EQ(state.staking.validator_power("val1"), 60'000u);
  EXPECT_EQ(state.staking.delegation_shares("whale", "val1"), 50'000 * kLunc);
  EXPECT_EQ(state.ledger.module_balance(lunc::module::kBondedPool).amount_of("uluna"), 90'000 * kLunc);
  EXPECT_TRUE(state.staking.check_invariants(state.ledger));
}

TEST_F(StakingTest, CapAppliesInsideProtectWindow) {
  // (10000 + d) / (40000 + d) <= 1/4  <=>  d <= 0.
  EXPECT_EQ(delegate("val1", 1 * kLunc, 8'300'000).code(), Errc::kPowerCapExceeded);
  EXPECT_TRUE(delegate("val1", kLunc - 1, 8'300'000));
  EXPECT_EQ(delegate("val1", 1 * kLunc, 8'300'000, kV20).code(), Errc::kMsgNotSupported);
  ASSERT_TRUE(state.staking.set_status("val2", lunc::ValidatorStatus::kJailed));
  EXPECT_EQ(delegate("val2", 1 * kLunc, 8'300'000).code(), Errc::kInvalidTx);
}

TEST_F(StakingTest, RejectedDelegationLeavesStateAlone) {
  const lunc::ChainState before = state;
  EXPECT_FALSE(delegate("val1", 5'000 * kLunc, 8'300'000));
  EXPECT_EQ(state, before);
  EXPECT_EQ(delegate("nobody", kLunc, 9'000'000).code(), Errc::kUnknownValidator);
  EXPECT_EQ(state.staking.delegate(state.ledger, "whale", "val1", Coin{"uusd", kLunc}, 9'000'000, kV21).code(),
            Errc::kInvalidTx);
  EXPECT_EQ(state.staking.delegate(state.ledger, "pauper", "val1", Coin{"uluna", kLunc}, 9'000'000, kV21).code(),
            Errc::kInsufficientFunds);
  EXPECT_EQ(state, before);
}

TEST_F(StakingTest, UndelegateQueuesAndMatures) {
  ASSERT_TRUE(delegate("val1", 100 * kLunc, 9'000'000));
  auto entry = state.staking.undelegate(state.ledger, "whale", "val1", Coin{"uluna", 40 * kLunc}, 9'000'010);
  ASSERT_TRUE(entry);
  EXPECT_EQ(entry->completion_height, 9'000'010 + 259'200);
  EXPECT_EQ(state.staking.delegation_shares("whale", "val1"), 60 * kLunc);
  EXPECT_TRUE(state.staking.check_invariants(state.ledger));

  const auto before = state.ledger.balance("whale").amount_of("uluna");
  EXPECT_TRUE(state.staking.mature_unbondings(state.ledger, 9'000'010 + 259'199).empty());
  EXPECT_EQ(state.staking.mature_unbondings(state.ledger, 9'000'010 + 259'200).size(), 1u);
  EXPECT_EQ(state.ledger.balance("whale").amount_of("uluna"), before + 40 * kLunc);
  EXPECT_TRUE(state.staking.check_invariants(state.ledger));
}

TEST_F(StakingTest, UndelegateErrors) {
  EXPECT_EQ(state.staking.undelegate(state.ledger, "whale", "val1", Coin{"uluna", 1}, 9'000'000).code(),
            Errc::kUnknownDelegation);
  EXPECT_EQ(state.staking.undelegate(state.ledger, "val1", "val1", Coin{"uluna", 10'001 * kLunc}, 9'000'000).code(),
            Errc::kInsufficientShares);
}

TEST_F(StakingTest, FullUndelegationDeactivatesValidator) {
  ASSERT_TRUE(state.staking.undelegate(state.ledger, "val4", "val4", Coin{"uluna", 10'000 * kLunc}, 9'000'000));
  EXPECT_EQ(state.staking.find_validator("val4")->status, lunc::ValidatorStatus::kInactive);
  EXPECT_EQ(state.staking.total_voting_power(), 30'000u);
  EXPECT_TRUE(state.staking.check_invariants(state.ledger));
}

TEST_F(StakingTest, CreateValidatorRespectsGatesAndDuplicates) {
  EXPECT_EQ(state.staking.create_validator({"val9", SoftwareVersion::kV21}, 8'300'000, kV21).code(),
            Errc::kMsgNotSupported);
  EXPECT_TRUE(state.staking.create_validator({"val9", SoftwareVersion::kV21}, 8'905'758, kV21));
  EXPECT_EQ(state.staking.create_validator({"val9", SoftwareVersion::kV21}, 8'905'759, kV21).code(),
            Errc::kDuplicateValidator);
  EXPECT_EQ(state.staking.find_validator("val9")->status, lunc::ValidatorStatus::kInactive);
  EXPECT_EQ(state.staking.validator_power("val9"), 0u);
}
