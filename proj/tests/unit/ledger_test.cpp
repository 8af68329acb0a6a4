#include <gtest/gtest.h>

#include "lunc/ledger.hpp"
#include "support/printers.hpp"

using lunc::Coin;
using lunc::Coins;
using lunc::Errc;
using lunc::Ledger;
namespace module = lunc::module;

class LedgerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ledger.credit_genesis_account("alice", Coin{"uluna", 1'000});
    ledger.credit_genesis_account("alice", Coin{"uusd", 50});
    ledger.credit_genesis_account("bob", Coin{"uluna", 200});
  }

  Ledger ledger;
};

TEST_F(LedgerTest, GenesisSupply) {
  EXPECT_EQ(ledger.total_supply("uluna"), 1'200u);
  EXPECT_EQ(ledger.supply().genesis, (Coins{{"uluna", 1'200}, {"uusd", 50}}));
  EXPECT_TRUE(ledger.check_invariants());
}

TEST_F(LedgerTest, TransferMovesExactly) {
  ASSERT_TRUE(ledger.transfer("alice", "carol", Coins{{"uluna", 300}, {"uusd", 50}}));
  EXPECT_EQ(ledger.balance("alice"), (Coins{{"uluna", 700}}));
  EXPECT_EQ(ledger.balance("carol"), (Coins{{"uluna", 300}, {"uusd", 50}}));
  EXPECT_EQ(ledger.total_supply("uluna"), 1'200u);
  EXPECT_TRUE(ledger.check_invariants());
}

TEST_F(LedgerTest, OverdraftChangesNothing) {
  const Ledger before = ledger;
  auto st = ledger.transfer("alice", "bob", Coins{{"uluna", 10}, {"uusd", 51}});
  EXPECT_EQ(st.code(), Errc::kInsufficientFunds);
  EXPECT_EQ(ledger, before);
}

TEST_F(LedgerTest, UnknownModuleIsRejected) {
  EXPECT_EQ(ledger.send_account_to_module("alice", "Nowhere", Coins{{"uluna", 1}}).code(),
            Errc::kUnknownModule);
  EXPECT_EQ(ledger.mint("Nowhere", Coins{{"uluna", 1}}).code(), Errc::kUnknownModule);
}

TEST_F(LedgerTest, MintAndBurnTrackSupply) {
  ASSERT_TRUE(ledger.mint(module::kTreasury, Coins{{"uluna", 40}}));
  ASSERT_TRUE(ledger.send_account_to_module("bob", module::kBurnModule, Coins{{"uluna", 15}}));
  ASSERT_TRUE(ledger.burn(module::kBurnModule, Coins{{"uluna", 15}}));
  EXPECT_EQ(ledger.total_supply("uluna"), 1'200u + 40 - 15);
  EXPECT_EQ(ledger.supply().cumulative_minted.amount_of("uluna"), 40u);
  EXPECT_EQ(ledger.supply().cumulative_burned.amount_of("uluna"), 15u);
  EXPECT_EQ(ledger.burn(module::kBurnModule, Coins{{"uluna", 1}}).code(), Errc::kInsufficientFunds);
  EXPECT_TRUE(ledger.check_invariants());
}

TEST_F(LedgerTest, InputOutputMustBalance) {
  EXPECT_EQ(ledger.input_output({{"alice", Coins{{"uluna", 10}}}}, {{"bob", Coins{{"uluna", 9}}}}).code(),
            Errc::kInvalidTx);
  ASSERT_TRUE(ledger.input_output({{"alice", Coins{{"uluna", 10}}}, {"bob", Coins{{"uluna", 5}}}},
                                  {{"carol", Coins{{"uluna", 12}}}, {"dave", Coins{{"uluna", 3}}}}));
  EXPECT_EQ(ledger.balance("alice").amount_of("uluna"), 990u);
  EXPECT_EQ(ledger.balance("bob").amount_of("uluna"), 195u);
  EXPECT_EQ(ledger.balance("carol").amount_of("uluna"), 12u);
  EXPECT_EQ(ledger.balance("dave").amount_of("uluna"), 3u);
}

TEST_F(LedgerTest, InputOutputIsAtomic) {
  const Ledger before = ledger;
  auto st = ledger.input_output({{"alice", Coins{{"uluna", 10}}}, {"bob", Coins{{"uluna", 500}}}},
                                {{"carol", Coins{{"uluna", 510}}}});
  EXPECT_EQ(st.code(), Errc::kInsufficientFunds);
  EXPECT_EQ(ledger, before);
}

TEST_F(LedgerTest, ModuleToModule) {
  ASSERT_TRUE(ledger.send_account_to_module("alice", module::kFeeCollector, Coins{{"uusd", 20}}));
  ASSERT_TRUE(ledger.send_module_to_module(module::kFeeCollector, module::kCommunityPool, Coins{{"uusd", 20}}));
  EXPECT_EQ(ledger.module_balance(module::kCommunityPool), (Coins{{"uusd", 20}}));
  EXPECT_TRUE(ledger.module_balance(module::kFeeCollector).is_zero());
  EXPECT_TRUE(ledger.check_invariants());
}
