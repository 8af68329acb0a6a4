#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lunc/block_time.hpp"
#include "lunc/config.hpp"
#include "lunc/fee_estimator.hpp"
#include "lunc/report.hpp"
#include "support/printers.hpp"
#include "support/fixtures.hpp"

using lunc::Coins;
using lunc::Errc;
using lunc::Ratio;
using fixtures::kLunc;

namespace {

const char* const kGenesis = R"({
  "genesis_height": 100,
  "accounts": [{"address": "alice", "denom": "uluna", "amount": "5000000000"}],
  "staking": {
    "gates": {"staking_power_upgrade": 150, "delegate_power_revert": 160, "staking_power_revert": 170},
    "validators": [{"address": "val1", "tokens": 1000000000, "version": "v21", "status": "active"}]
  },
  "ante": {"tax_power_upgrade_height": 0},
  "treasury": {
    "tax_rate": "0.012",
    "tax_policy": {"rate_min": "0", "rate_max": "0.05", "change_rate_max": "0", "cap": "0usdr"},
    "epoch_length_blocks": 50,
    "tax_caps": {"uusd": "1000000"}
  },
  "governance": {"voting_period_blocks": 7}
})";

const char* const kScenario = R"({
  "name": "mini",
  "end_height": 130,
  "report_interval": 10,
  "events": [
    {"height": 105, "type": "submit-tx", "label": "pay",
     "tx": {"fee_payer": "alice", "fee": "42000uluna",
            "msgs": [{"type": "send", "from": "alice", "to": "bob", "amount": "1000000uluna"}]}},
    {"height": 106, "type": "upgrade-validator", "validator": "val1", "version": "v20"},
    {"height": 107, "type": "sniper-arm", "target_height": 120, "inclusion_delay": 1,
     "tx": {"fee_payer": "alice", "fee": [{"denom": "uluna", "amount": 30000}],
            "msgs": [{"type": "delegate", "delegator": "alice", "validator": "val1", "amount": "1uluna"}]}},
    {"height": 108, "type": "rollback-to", "target_height": 100},
    {"height": 109, "type": "set-precommit-fraction", "fraction": "3/4"},
    {"height": 110, "type": "community-spend", "burn": true, "amount": {"uluna": 1}}
  ]
})";

}  // namespace

TEST(ConfigTest, ParsesGenesis) {
  auto spec = lunc::parse_genesis(kGenesis);
  ASSERT_TRUE(spec) << spec.status().describe();
  EXPECT_EQ(spec->gates.protect_power, 160 + lunc::protect_window_blocks());
  auto state = lunc::build_genesis(*spec);
  ASSERT_TRUE(state) << state.status().describe();
  EXPECT_EQ(state->height, 100);
  EXPECT_EQ(state->treasury.tax_rate(), Ratio(12, 1000));
  EXPECT_EQ(state->treasury.tax_cap("uusd"), 1'000'000u);
  EXPECT_EQ(state->staking.validator_power("val1"), 1'000u);
  EXPECT_EQ(state->staking.find_validator("val1")->version, lunc::SoftwareVersion::kV21);
  EXPECT_EQ(state->governance.params().voting_period_blocks, 7);
  EXPECT_EQ(state->ledger.balance("alice").amount_of("uluna"), 5'000 * kLunc);
}

TEST(ConfigTest, ParsesEveryEventType) {
  auto s = lunc::parse_scenario(kScenario);
  ASSERT_TRUE(s) << s.status().describe();
  EXPECT_EQ(s->name, "mini");
  EXPECT_EQ(s->report_interval, 10);
  ASSERT_EQ(s->events.size(), 6u);
  const auto& tx = std::get<lunc::SubmitTxEvent>(s->events[0].action);
  EXPECT_EQ(tx.label, "pay");
  EXPECT_EQ(tx.tx.declared_fee, (Coins{{"uluna", 42'000}}));
  EXPECT_EQ(std::get<lunc::UpgradeValidatorEvent>(s->events[1].action).version, lunc::SoftwareVersion::kV20);
  EXPECT_EQ(std::get<lunc::SniperArmEvent>(s->events[2].action).inclusion_delay, 1);
  EXPECT_EQ(std::get<lunc::RollbackToEvent>(s->events[3].action).height, 100);
  EXPECT_EQ(std::get<lunc::SetPrecommitFractionEvent>(s->events[4].action).fraction, Ratio(3, 4));
  EXPECT_TRUE(std::get<lunc::CommunitySpendEvent>(s->events[5].action).target.burn);
}

TEST(ConfigTest, MalformedInputIsParseError) {
  EXPECT_EQ(lunc::parse_genesis("{").code(), Errc::kParseError);
  EXPECT_EQ(lunc::parse_scenario(R"({"events": []})").code(), Errc::kParseError);
  EXPECT_EQ(lunc::parse_scenario(R"({"end_height": 5, "events": [{"height": 1, "type": "warp"}]})").code(),
            Errc::kParseError);
  EXPECT_EQ(lunc::parse_genesis(R"({"accounts": [{"address": "a", "denom": "uluna", "amount": -1}]})").code(),
            Errc::kParseError);
  EXPECT_EQ(lunc::load_scenario_file("/nonexistent/scenario.json").code(), Errc::kParseError);
}

TEST(ConfigTest, GenesisValidation) {
  auto spec = lunc::parse_genesis(R"({"staking": {"gates": {"staking_power_upgrade": 10, "delegate_power_revert": 5}}})");
  ASSERT_TRUE(spec);
  EXPECT_EQ(lunc::build_genesis(*spec).code(), Errc::kParseError);
}

TEST(ConfigTest, CoinStrings) {
  auto c = lunc::parse_coins("1000uluna,5uusd");
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (Coins{{"uluna", 1'000}, {"uusd", 5}}));
  EXPECT_EQ(lunc::parse_coins("uluna").code(), Errc::kParseError);
  EXPECT_EQ(lunc::parse_coins("12").code(), Errc::kParseError);
}

TEST(ReportTest, CsvAndSummary) {
  auto spec = lunc::parse_genesis(kGenesis);
  auto scenario = lunc::parse_scenario(R"({"name": "r", "end_height": 120, "report_interval": 10,
    "events": [{"height": 105, "type": "submit-tx", "label": "pay",
      "tx": {"fee_payer": "alice", "fee": "42000uluna",
             "msgs": [{"type": "send", "from": "alice", "to": "bob", "amount": "1000000uluna"}]}}]})");
  ASSERT_TRUE(spec);
  ASSERT_TRUE(scenario);
  auto state = lunc::build_genesis(*spec);
  ASSERT_TRUE(state);
  const auto report = lunc::run_scenario(*state, *scenario);
  ASSERT_TRUE(report.invariant) << report.invariant.describe();

  std::ostringstream csv;
  lunc::write_block_csv(csv, report, {"uluna"});
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "height,halted,compatible_power_fraction,proposer,txs,failed_txs,supply_uluna,burned_uluna,"
            "community_pool_uluna");
  std::vector<std::string> rows;
  for (std::string row; std::getline(lines, row);) rows.push_back(row);
  ASSERT_EQ(rows.size(), 3u);  // 105, 110, 120
  EXPECT_EQ(rows[0].substr(0, 4), "105,");

  const std::string summary = lunc::summary_json(report, {"uluna"});
  EXPECT_NE(summary.find("\"scenario\": \"r\""), std::string::npos);
  EXPECT_NE(summary.find("\"final_height\": 120"), std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "lunc_report_test";
  std::filesystem::remove_all(dir);
  ASSERT_TRUE(lunc::write_reports(dir, report, {"uluna"}));
  EXPECT_TRUE(std::filesystem::exists(dir / "blocks.csv"));
  std::ifstream in(dir / "summary.json");
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str().substr(0, summary.size()), summary);
  std::filesystem::remove_all(dir);
}

TEST(ReportTest, LargeAmountsBecomeStrings) {
  auto state = fixtures::ChainBuilder().account("whale", lunc::kJsonSafeInteger + 1).build();
  lunc::Scenario s;
  s.name = "big";
  s.end_height = 1;
  const auto report = lunc::run_scenario(state, s);
  const std::string summary = lunc::summary_json(report, {"uluna"});
  EXPECT_NE(summary.find("\"9007199254740992\""), std::string::npos);
}

TEST(FeeEstimatorTest, WorkedExample) {
  lunc::TaxComputationParams params{.tax_rate = Ratio::parse("0.012")};
  const auto est = lunc::estimate_fee(1'000'000, "uluna", 250, params);
  EXPECT_EQ(est.tax, 12'000u);
  EXPECT_EQ(est.new_fee, 12'250u);

  auto left = lunc::deduct_tax({lunc::AssetKind::kNativeToken, "uluna", 1'000'000}, params);
  ASSERT_TRUE(left);
  EXPECT_EQ(*left, 988'000u);
  EXPECT_EQ(lunc::deduct_tax({lunc::AssetKind::kToken, "terra1token", 1'000'000}, params).code(),
            Errc::kNonNativeAsset);
}

TEST(FeeEstimatorTest, CapAndExemption) {
  lunc::TaxComputationParams params{.tax_rate = Ratio::parse("0.012"), .tax_caps = {{"uusd", 5'000}}};
  EXPECT_EQ(lunc::estimate_fee(1'000'000, "uusd", 0, params).tax, 5'000u);
  params.exempt_denoms.insert("uusd");
  const auto est = lunc::estimate_fee(1'000'000, "uusd", 77, params);
  EXPECT_EQ(est.tax, 0u);
  EXPECT_EQ(est.new_fee, 77u);
}
