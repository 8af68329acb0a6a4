#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lunc/coins.hpp"
#include "lunc/error.hpp"
#include "lunc/ledger.hpp"
#include "lunc/ratio.hpp"
#include "lunc/staking.hpp"

namespace lunc {

struct DistributionParams {
  Ratio community_tax{2, 100};
  Ratio base_proposer_reward{1, 100};
  Ratio bonus_proposer_reward{4, 100};

  Status validate() const;

  friend bool operator==(const DistributionParams&, const DistributionParams&) = default;
};

/// How one block's fees were split. Every coin of `fees` lands in exactly
/// one of proposer, community, validator shares or dust.
struct FeeAllocation {
  Coins fees;
  Coins proposer;
  Coins community;
  Coins validators;
  Coins dust;
  std::map<std::string, Coins, std::less<>> per_validator;  // proposer share included
};

/// Pure split: proposer floor((base + bonus * f) * fees), community
/// floor(community_tax * fees), the remainder pro rata by power (floored)
/// over `bonded`, rounding dust to the community pool.
FeeAllocation split_block_fees(const Coins& fees, std::string_view proposer,
                               const Ratio& precommit_power_fraction,
                               const DistributionParams& params,
                               const std::vector<std::pair<std::string, ConsensusPower>>& bonded);

/// Where a community pool spend goes.
struct SpendTarget {
  bool burn = false;
  std::string recipient;

  static SpendTarget burn_target() { return {.burn = true, .recipient = {}}; }
  static SpendTarget account(std::string address) { return {.burn = false, .recipient = std::move(address)}; }

  friend bool operator==(const SpendTarget&, const SpendTarget&) = default;
};

class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(DistributionParams params) : params_(std::move(params)) {}

  const DistributionParams& params() const { return params_; }
  DistributionParams& mutable_params() { return params_; }

  /// Moves the fee collector balance out: community share to the community
  /// pool, validator shares into the distribution account, credited to each
  /// delegation pro rata by shares. Per-delegation rounding stays with the
  /// validator as undistributed accrual.
  Result<FeeAllocation> allocate_block_fees(Ledger& ledger, const Staking& staking,
                                            std::string_view proposer,
                                            const Ratio& precommit_power_fraction);

  Status community_pool_spend(Ledger& ledger, const SpendTarget& target, const Coins& amount);

  /// Pays the delegation's accrued rewards to the delegator.
  Result<Coins> withdraw_rewards(Ledger& ledger, const Staking& staking, std::string_view delegator,
                                 std::string_view validator);

  const Coins& delegation_rewards(std::string_view delegator, std::string_view validator) const;
  const Coins& validator_accrued(std::string_view validator) const;
  const std::map<std::string, Coins, std::less<>>& all_validator_accrued() const {
    return validator_accrued_;
  }
  const std::map<DelegationKey, Coins>& all_delegation_rewards() const { return delegation_rewards_; }

  /// Distribution account balance equals accrued plus delegation rewards.
  Status check_invariants(const Ledger& ledger) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  DistributionParams params_;
  std::map<std::string, Coins, std::less<>> validator_accrued_;
  std::map<DelegationKey, Coins> delegation_rewards_;
};

}  // namespace lunc
