#pragma once

#include <string>

#include "lunc/config.hpp"

namespace fixtures {

inline constexpr lunc::Amount kLunc = 1'000'000;

/// Fluent genesis builder for tests.
class ChainBuilder {
 public:
  ChainBuilder();

  ChainBuilder& height(lunc::Height h);
  ChainBuilder& account(const std::string& address, lunc::Amount amount, const std::string& denom = "uluna");
  ChainBuilder& validator(const std::string& address, lunc::Amount tokens,
                          lunc::SoftwareVersion version = lunc::SoftwareVersion::kV21);
  ChainBuilder& gates(lunc::HeightGates g);
  ChainBuilder& tax(const std::string& rate, lunc::Height upgrade_height = 0);
  ChainBuilder& epoch(lunc::Height blocks);
  ChainBuilder& voting_period(lunc::Height blocks);

  lunc::GenesisSpec& spec() { return spec_; }
  lunc::ChainState build() const;

 private:
  lunc::GenesisSpec spec_;
};

/// Tx paying `fee` uluna plus any extra coins.
lunc::Tx make_tx(const std::string& payer, lunc::Msg msg, const lunc::Coins& fee);

/// Testnet gates: upgrade 7603700, delegate revert 7684490.
lunc::HeightGates testnet_gates();

}  // namespace fixtures
