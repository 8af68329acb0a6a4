#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lunc/coins.hpp"
#include "lunc/error.hpp"

namespace lunc {

/// Module account names registered at genesis.
namespace module {
inline constexpr std::string_view kFeeCollector = "FeeCollector";
inline constexpr std::string_view kBurnModule = "BurnModule";
inline constexpr std::string_view kCommunityPool = "CommunityPool";
inline constexpr std::string_view kBondedPool = "BondedPool";
inline constexpr std::string_view kNotBondedPool = "NotBondedPool";
inline constexpr std::string_view kTreasury = "Treasury";
/// Holds allocated but not yet withdrawn staking rewards.
inline constexpr std::string_view kDistribution = "Distribution";

std::vector<std::string> defaults();
}  // namespace module

/// Per-denom supply bookkeeping.
struct SupplyLedger {
  Coins genesis;
  Coins totals;
  Coins cumulative_minted;
  Coins cumulative_burned;

  friend bool operator==(const SupplyLedger&, const SupplyLedger&) = default;
};

/// Account and module-account balances. All amounts move through the
/// operations below so the supply identities hold after every call.
class Ledger {
 public:
  using BalanceMap = std::map<std::string, Coins, std::less<>>;

  Ledger();
  explicit Ledger(const std::vector<std::string>& module_names);

  // Genesis allocation; counted into genesis supply.
  void credit_genesis_account(std::string_view address, const Coin& coin);
  Status credit_genesis_module(std::string_view module, const Coin& coin);

  Status transfer(std::string_view from, std::string_view to, const Coins& coins);
  /// Multi-party transfer; inputs and outputs must sum to the same coins.
  Status input_output(const std::vector<std::pair<std::string, Coins>>& inputs,
                      const std::vector<std::pair<std::string, Coins>>& outputs);
  Status send_account_to_module(std::string_view from, std::string_view to_module, const Coins& coins);
  Status send_module_to_account(std::string_view from_module, std::string_view to, const Coins& coins);
  Status send_module_to_module(std::string_view from_module, std::string_view to_module,
                               const Coins& coins);
  Status burn(std::string_view module, const Coins& coins);
  Status mint(std::string_view module, const Coins& coins);

  bool has_module(std::string_view module) const;
  const Coins& balance(std::string_view address) const;
  const Coins& module_balance(std::string_view module) const;

  Amount total_supply(std::string_view denom) const;
  const SupplyLedger& supply() const { return supply_; }
  const BalanceMap& accounts() const { return accounts_; }
  const BalanceMap& modules() const { return modules_; }

  /// Full scan: balances sum to totals, and totals equal
  /// genesis + minted - burned, for every denom.
  Status check_invariants() const;

  friend bool operator==(const Ledger&, const Ledger&) = default;

 private:
  Status debit(BalanceMap& map, std::string_view owner, const Coins& coins, std::string_view what);

  BalanceMap accounts_;
  BalanceMap modules_;
  SupplyLedger supply_;
};

}  // namespace lunc
