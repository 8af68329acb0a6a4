#include "lunc/ledger.hpp"

namespace lunc {

namespace module {
std::vector<std::string> defaults() {
  return {std::string(kFeeCollector), std::string(kBurnModule),    std::string(kCommunityPool),
          std::string(kBondedPool),   std::string(kNotBondedPool), std::string(kTreasury),
          std::string(kDistribution)};
}
}  // namespace module

namespace {
const Coins kEmpty{};

Status unknown_module(std::string_view name) {
  return error(Errc::kUnknownModule, "module '" + std::string(name) + "' is not registered");
}
}  // namespace

Ledger::Ledger() : Ledger(module::defaults()) {}

Ledger::Ledger(const std::vector<std::string>& module_names) {
  for (const auto& name : module_names) modules_.try_emplace(name);
}

void Ledger::credit_genesis_account(std::string_view address, const Coin& coin) {
  if (coin.amount == 0) {
    accounts_.try_emplace(std::string(address));
    return;
  }
  accounts_[std::string(address)].add(coin.denom, coin.amount);
  supply_.genesis.add(coin.denom, coin.amount);
  supply_.totals.add(coin.denom, coin.amount);
}

Status Ledger::credit_genesis_module(std::string_view module, const Coin& coin) {
  auto it = modules_.find(module);
  if (it == modules_.end()) return unknown_module(module);
  it->second.add(coin.denom, coin.amount);
  supply_.genesis.add(coin.denom, coin.amount);
  supply_.totals.add(coin.denom, coin.amount);
  return Status::ok();
}

Status Ledger::debit(BalanceMap& map, std::string_view owner, const Coins& coins,
                     std::string_view what) {
  if (coins.is_zero()) return Status::ok();
  auto it = map.find(owner);
  const Coins& have = it == map.end() ? kEmpty : it->second;
  if (auto denom = have.first_shortfall(coins)) {
    return error(Errc::kInsufficientFunds,
                 std::string(what) + " '" + std::string(owner) + "' has " +
                     to_string(have.amount_of(*denom)) + *denom + ", needs " +
                     to_string(coins.amount_of(*denom)) + *denom);
  }
  it->second.subtract(coins);
  return Status::ok();
}

Status Ledger::transfer(std::string_view from, std::string_view to, const Coins& coins) {
  if (auto st = debit(accounts_, from, coins, "account"); !st) return st;
  if (!coins.is_zero()) accounts_[std::string(to)].add(coins);
  return Status::ok();
}

Status Ledger::input_output(const std::vector<std::pair<std::string, Coins>>& inputs,
                            const std::vector<std::pair<std::string, Coins>>& outputs) {
  Coins in_total;
  Coins out_total;
  for (const auto& [_, c] : inputs) in_total.add(c);
  for (const auto& [_, c] : outputs) out_total.add(c);
  if (in_total != out_total) {
    return error(Errc::kInvalidTx, "inputs " + in_total.to_string() + " != outputs " +
                                       out_total.to_string());
  }
  BalanceMap staged = accounts_;
  for (const auto& [address, coins] : inputs) {
    if (auto st = debit(staged, address, coins, "account"); !st) return st;
  }
  for (const auto& [address, coins] : outputs) {
    if (!coins.is_zero()) staged[address].add(coins);
  }
  accounts_ = std::move(staged);
  return Status::ok();
}

Status Ledger::send_account_to_module(std::string_view from, std::string_view to_module,
                                      const Coins& coins) {
  auto dst = modules_.find(to_module);
  if (dst == modules_.end()) return unknown_module(to_module);
  if (auto st = debit(accounts_, from, coins, "account"); !st) return st;
  dst->second.add(coins);
  return Status::ok();
}

Status Ledger::send_module_to_account(std::string_view from_module, std::string_view to,
                                      const Coins& coins) {
  if (!has_module(from_module)) return unknown_module(from_module);
  if (auto st = debit(modules_, from_module, coins, "module"); !st) return st;
  if (!coins.is_zero()) accounts_[std::string(to)].add(coins);
  return Status::ok();
}

Status Ledger::send_module_to_module(std::string_view from_module, std::string_view to_module,
                                     const Coins& coins) {
  if (!has_module(from_module)) return unknown_module(from_module);
  auto dst = modules_.find(to_module);
  if (dst == modules_.end()) return unknown_module(to_module);
  if (auto st = debit(modules_, from_module, coins, "module"); !st) return st;
  dst->second.add(coins);
  return Status::ok();
}

Status Ledger::burn(std::string_view module, const Coins& coins) {
  if (!has_module(module)) return unknown_module(module);
  if (auto st = debit(modules_, module, coins, "module"); !st) return st;
  supply_.totals.subtract(coins);
  supply_.cumulative_burned.add(coins);
  return Status::ok();
}

Status Ledger::mint(std::string_view module, const Coins& coins) {
  auto it = modules_.find(module);
  if (it == modules_.end()) return unknown_module(module);
  it->second.add(coins);
  supply_.totals.add(coins);
  supply_.cumulative_minted.add(coins);
  return Status::ok();
}

bool Ledger::has_module(std::string_view module) const { return modules_.contains(module); }

const Coins& Ledger::balance(std::string_view address) const {
  auto it = accounts_.find(address);
  return it == accounts_.end() ? kEmpty : it->second;
}

const Coins& Ledger::module_balance(std::string_view module) const {
  auto it = modules_.find(module);
  return it == modules_.end() ? kEmpty : it->second;
}

Amount Ledger::total_supply(std::string_view denom) const { return supply_.totals.amount_of(denom); }

Status Ledger::check_invariants() const {
  Coins scanned;
  for (const auto& [_, coins] : accounts_) scanned.add(coins);
  for (const auto& [_, coins] : modules_) scanned.add(coins);
  if (scanned != supply_.totals) {
    return error(Errc::kInternalInconsistency,
                 "balance sum " + scanned.to_string() + " != total supply " + supply_.totals.to_string());
  }
  Coins expected = supply_.genesis + supply_.cumulative_minted;
  if (!expected.covers(supply_.cumulative_burned)) {
    return error(Errc::kInternalInconsistency, "cumulative burn exceeds genesis plus minted");
  }
  expected.subtract(supply_.cumulative_burned);
  if (expected != supply_.totals) {
    return error(Errc::kInternalInconsistency,
                 "genesis + minted - burned " + expected.to_string() + " != total supply " +
                     supply_.totals.to_string());
  }
  return Status::ok();
}

}  // namespace lunc
