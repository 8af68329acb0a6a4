#include "lunc/chain_state.hpp"

#include <variant>

namespace lunc {

Status check_invariants(const ChainState& state) {
  if (auto st = state.ledger.check_invariants(); !st) return st;
  if (auto st = state.staking.check_invariants(state.ledger); !st) return st;
  if (auto st = state.distribution.check_invariants(state.ledger); !st) return st;
  return Status::ok();
}

namespace {

Status apply_change(ChainState& state, const TreasuryPolicyChange& c) {
  if (c.target == TreasuryPolicyChange::Target::kTaxPolicy) {
    state.treasury.queue_tax_policy(c.policy);
  } else {
    state.treasury.queue_reward_policy(c.policy);
  }
  return Status::ok();
}

Status apply_change(ChainState& state, const DistributionParamChange& c) {
  DistributionParams next = state.distribution.params();
  switch (c.field) {
    case DistributionParamChange::Field::kCommunityTax: next.community_tax = c.value; break;
    case DistributionParamChange::Field::kBaseProposerReward: next.base_proposer_reward = c.value; break;
    case DistributionParamChange::Field::kBonusProposerReward: next.bonus_proposer_reward = c.value; break;
  }
  if (auto st = next.validate(); !st) return st;
  state.distribution.mutable_params() = next;
  return Status::ok();
}

Status apply_change(ChainState& state, const StakingParamChange& c) {
  switch (c.field) {
    case StakingParamChange::Field::kUnbondingPeriodBlocks:
      state.staking.mutable_params().unbonding_period_blocks = c.blocks;
      break;
    case StakingParamChange::Field::kMaxDelegationPowerFraction:
      state.staking.mutable_params().max_delegation_power_fraction = c.fraction;
      break;
  }
  return Status::ok();
}

Status apply_change(ChainState& state, const TransferParamChange& c) {
  switch (c.field) {
    case TransferParamChange::Field::kSendEnabled: state.transfer.send_enabled = c.value; break;
    case TransferParamChange::Field::kReceiveEnabled: state.transfer.receive_enabled = c.value; break;
  }
  return Status::ok();
}

}  // namespace

Status apply_param_change(ChainState& state, ProposalId id) {
  const Proposal* p = state.governance.find(id);
  if (p == nullptr) return error(Errc::kUnknownProposal, std::to_string(id));
  if (p->status != ProposalStatus::kPassed) {
    return error(Errc::kNotPassed, "proposal " + std::to_string(id) + " is " +
                                       std::string(to_string(p->status)));
  }

  // Stage so that a proposal applies entirely or not at all.
  ChainState staged = state;
  switch (p->content.kind) {
    case ProposalKind::kText:
      break;
    case ProposalKind::kParamChange:
      for (const auto& change : p->typed_changes) {
        Status st = std::visit([&](const auto& c) { return apply_change(staged, c); }, change);
        if (!st) return st;
      }
      break;
    case ProposalKind::kCommunitySpend:
      if (auto st = staged.distribution.community_pool_spend(staged.ledger, p->content.spend_target,
                                                             p->content.spend_amount);
          !st) {
        return st;
      }
      break;
  }
  if (auto st = staged.governance.mark_applied(id); !st) return st;
  state = std::move(staged);
  return Status::ok();
}

}  // namespace lunc
