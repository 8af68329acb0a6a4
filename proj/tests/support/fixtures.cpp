#include "fixtures.hpp"

#include <stdexcept>

#include "lunc/block_time.hpp"

namespace fixtures {

ChainBuilder::ChainBuilder() { spec_.treasury.tax_policy.rate_max = lunc::Ratio(1); }

ChainBuilder& ChainBuilder::height(lunc::Height h) {
  spec_.chain.genesis_height = h;
  return *this;
}

ChainBuilder& ChainBuilder::account(const std::string& address, lunc::Amount amount, const std::string& denom) {
  spec_.accounts.emplace_back(address, lunc::Coin{denom, amount});
  return *this;
}

ChainBuilder& ChainBuilder::validator(const std::string& address, lunc::Amount tokens,
                                      lunc::SoftwareVersion version) {
  spec_.validators.push_back(lunc::Validator{.operator_address = address,
                                             .tokens = tokens,
                                             .status = lunc::ValidatorStatus::kActive,
                                             .version = version});
  return *this;
}

ChainBuilder& ChainBuilder::gates(lunc::HeightGates g) {
  spec_.gates = g;
  return *this;
}

ChainBuilder& ChainBuilder::tax(const std::string& rate, lunc::Height upgrade_height) {
  spec_.treasury.tax_rate = lunc::Ratio::parse(rate);
  spec_.treasury.tax_policy.rate_min = spec_.treasury.tax_rate;
  spec_.treasury.tax_policy.rate_max = spec_.treasury.tax_rate;
  spec_.chain.ante.tax_power_upgrade_height = upgrade_height;
  return *this;
}

ChainBuilder& ChainBuilder::epoch(lunc::Height blocks) {
  spec_.treasury.epoch_length_blocks = blocks;
  return *this;
}

ChainBuilder& ChainBuilder::voting_period(lunc::Height blocks) {
  spec_.governance.voting_period_blocks = blocks;
  return *this;
}

lunc::ChainState ChainBuilder::build() const {
  auto state = lunc::build_genesis(spec_);
  if (!state) throw std::runtime_error("fixture genesis: " + state.status().describe());
  return std::move(state).value();
}

lunc::Tx make_tx(const std::string& payer, lunc::Msg msg, const lunc::Coins& fee) {
  lunc::Tx tx;
  tx.fee_payer = payer;
  tx.msgs.push_back(std::move(msg));
  tx.declared_fee = fee;
  return tx;
}

lunc::HeightGates testnet_gates() {
  lunc::HeightGates g;
  g.staking_power_upgrade = 7'603'700;
  g.delegate_power_revert = 7'684'490;
  g.staking_power_revert = 7'685'500;
  g.protect_power = g.delegate_power_revert + lunc::protect_window_blocks();
  return g;
}

}  // namespace fixtures
