#include "lunc/distribution.hpp"

namespace lunc {

namespace {
const Coins kNoCoins{};

bool in_unit_interval(const Ratio& r) { return !r.is_negative() && r <= Ratio(1); }
}  // namespace

Status DistributionParams::validate() const {
  if (!in_unit_interval(community_tax) || !in_unit_interval(base_proposer_reward) ||
      !in_unit_interval(bonus_proposer_reward)) {
    return error(Errc::kMalformedProposal, "distribution parameters must lie in [0, 1]");
  }
  if (community_tax + base_proposer_reward + bonus_proposer_reward > Ratio(1)) {
    return error(Errc::kMalformedProposal,
                 "community tax plus proposer rewards must not exceed 1");
  }
  return Status::ok();
}

FeeAllocation split_block_fees(const Coins& fees, std::string_view proposer,
                               const Ratio& precommit_power_fraction,
                               const DistributionParams& params,
                               const std::vector<std::pair<std::string, ConsensusPower>>& bonded) {
  FeeAllocation out;
  out.fees = fees;
  const Ratio proposer_multiplier =
      params.base_proposer_reward + params.bonus_proposer_reward * precommit_power_fraction;

  BigInt total_power = 0;
  for (const auto& [_, power] : bonded) total_power += to_bigint(power);

  for (const auto& [denom, amount] : fees) {
    const Amount proposer_share = proposer_multiplier.floor_mul(amount);
    const Amount community_share = params.community_tax.floor_mul(amount);
    const Amount remainder = amount - proposer_share - community_share;

    out.proposer.add(denom, proposer_share);
    out.community.add(denom, community_share);
    out.per_validator[std::string(proposer)].add(denom, proposer_share);

    Amount handed_out = 0;
    if (total_power > 0) {
      const BigInt big_remainder = to_bigint(remainder);
      for (const auto& [address, power] : bonded) {
        const Amount share = to_amount(big_remainder * to_bigint(power) / total_power);
        if (share == 0) continue;
        out.per_validator[address].add(denom, share);
        handed_out += share;
      }
    }
    out.validators.add(denom, handed_out);
    out.dust.add(denom, remainder - handed_out);
  }
  return out;
}

Result<FeeAllocation> Distribution::allocate_block_fees(Ledger& ledger, const Staking& staking,
                                                        std::string_view proposer,
                                                        const Ratio& precommit_power_fraction) {
  const Validator* prop = staking.find_validator(proposer);
  if (prop == nullptr) return error(Errc::kUnknownProposer, std::string(proposer));

  const Coins fees = ledger.module_balance(module::kFeeCollector);
  std::vector<std::pair<std::string, ConsensusPower>> bonded;
  for (const auto& [address, v] : staking.validators()) {
    if (v.status != ValidatorStatus::kActive) continue;
    const ConsensusPower power = staking.validator_power(address);
    if (power > 0) bonded.emplace_back(address, power);
  }
  FeeAllocation alloc =
      split_block_fees(fees, proposer, precommit_power_fraction, params_, bonded);
  if (fees.is_zero()) return alloc;

  const Coins to_community = alloc.community + alloc.dust;
  const Coins to_validators = alloc.proposer + alloc.validators;
  if (auto st = ledger.send_module_to_module(module::kFeeCollector, module::kCommunityPool,
                                             to_community);
      !st) {
    return st;
  }
  if (auto st = ledger.send_module_to_module(module::kFeeCollector, module::kDistribution,
                                             to_validators);
      !st) {
    return st;
  }

  for (const auto& [address, reward] : alloc.per_validator) {
    const Validator* v = staking.find_validator(address);
    Coins leftover = reward;
    if (v != nullptr && v->tokens > 0) {
      const BigInt tokens = to_bigint(v->tokens);
      for (const auto& [key, delegated] : staking.delegations()) {
        if (key.validator != address) continue;
        const BigInt shares = to_bigint(delegated);
        Coins cut;
        for (const auto& [denom, amount] : reward) {
          cut.add(denom, to_amount(to_bigint(amount) * shares / tokens));
        }
        if (cut.is_zero()) continue;
        leftover.subtract(cut);
        delegation_rewards_[key].add(cut);
      }
    }
    if (!leftover.is_zero()) validator_accrued_[address].add(leftover);
  }
  return alloc;
}

Status Distribution::community_pool_spend(Ledger& ledger, const SpendTarget& target,
                                          const Coins& amount) {
  if (target.burn) {
    return ledger.burn(module::kCommunityPool, amount);
  }
  if (target.recipient.empty()) return error(Errc::kInvalidTx, "spend recipient missing");
  return ledger.send_module_to_account(module::kCommunityPool, target.recipient, amount);
}

Result<Coins> Distribution::withdraw_rewards(Ledger& ledger, const Staking& staking,
                                             std::string_view delegator,
                                             std::string_view validator) {
  const DelegationKey key{std::string(delegator), std::string(validator)};
  auto it = delegation_rewards_.find(key);
  if (it == delegation_rewards_.end()) {
    if (staking.delegation_shares(delegator, validator) == 0) {
      return error(Errc::kUnknownDelegation,
                   std::string(delegator) + " has no delegation to " + std::string(validator));
    }
    return Coins{};
  }
  Coins payout = it->second;
  if (auto st = ledger.send_module_to_account(module::kDistribution, delegator, payout); !st) {
    return st;
  }
  delegation_rewards_.erase(it);
  return payout;
}

const Coins& Distribution::delegation_rewards(std::string_view delegator,
                                              std::string_view validator) const {
  auto it = delegation_rewards_.find(DelegationKey{std::string(delegator), std::string(validator)});
  return it == delegation_rewards_.end() ? kNoCoins : it->second;
}

const Coins& Distribution::validator_accrued(std::string_view validator) const {
  auto it = validator_accrued_.find(validator);
  return it == validator_accrued_.end() ? kNoCoins : it->second;
}

Status Distribution::check_invariants(const Ledger& ledger) const {
  Coins owed;
  for (const auto& [_, c] : validator_accrued_) owed.add(c);
  for (const auto& [_, c] : delegation_rewards_) owed.add(c);
  if (owed != ledger.module_balance(module::kDistribution)) {
    return error(Errc::kInternalInconsistency,
                 "distribution account " + ledger.module_balance(module::kDistribution).to_string() +
                     " != owed rewards " + owed.to_string());
  }
  return Status::ok();
}

}  // namespace lunc
