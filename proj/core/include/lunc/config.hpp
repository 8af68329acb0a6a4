#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lunc/chain_state.hpp"
#include "lunc/simulator.hpp"

namespace lunc {

/// Everything a genesis file describes, before it is turned into state.
struct GenesisSpec {
  ChainConfig chain;
  std::vector<std::pair<std::string, Coin>> accounts;
  std::vector<std::pair<std::string, Coin>> module_accounts;
  StakingParams staking;
  HeightGates gates;
  std::vector<Validator> validators;
  TreasuryConfig treasury;
  DistributionParams distribution;
  TallyParams governance;
  TransferParams transfer;
};

/// Validates parameters and credits balances. The state's height is the
/// genesis height.
Result<ChainState> build_genesis(const GenesisSpec& spec);

// All parsers report malformed input as ParseError.
Result<GenesisSpec> parse_genesis(std::string_view json_text);
Result<Scenario> parse_scenario(std::string_view json_text);
Result<GenesisSpec> load_genesis_file(const std::filesystem::path& path);
Result<Scenario> load_scenario_file(const std::filesystem::path& path);

/// "1000uluna" or "1000uluna,5uusd".
Result<Coins> parse_coins(std::string_view text);

}  // namespace lunc
