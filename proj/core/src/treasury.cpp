#include "lunc/treasury.hpp"

namespace lunc {

Status PolicyConstraints::validate() const {
  if (rate_min.is_negative() || rate_min > rate_max || rate_max > Ratio(1)) {
    return error(Errc::kMalformedProposal, "policy requires 0 <= rate_min <= rate_max <= 1");
  }
  if (change_rate_max.is_negative()) {
    return error(Errc::kMalformedProposal, "policy change_rate_max must be >= 0");
  }
  return Status::ok();
}

Ratio PolicyConstraints::clamp(const Ratio& prev, const Ratio& requested) const {
  Ratio next = requested;
  if (next > prev + change_rate_max) next = prev + change_rate_max;
  if (next < prev - change_rate_max) next = prev - change_rate_max;
  if (next < rate_min) next = rate_min;
  if (next > rate_max) next = rate_max;
  return next;
}

Treasury::Treasury(TreasuryConfig config)
    : tax_policy_(std::move(config.tax_policy)),
      reward_policy_(std::move(config.reward_policy)),
      tax_rate_(std::move(config.tax_rate)),
      reward_weight_(std::move(config.reward_weight)),
      epoch_length_blocks_(config.epoch_length_blocks),
      tax_caps_(std::move(config.tax_caps)),
      default_tax_cap_(config.default_tax_cap) {}

Amount Treasury::tax_cap(std::string_view denom) const {
  auto it = tax_caps_.find(denom);
  return it == tax_caps_.end() ? default_tax_cap_ : it->second;
}

bool Treasury::is_epoch_boundary(Height height) const {
  return epoch_length_blocks_ > 0 && height % epoch_length_blocks_ == 0;
}

std::int64_t Treasury::epoch_of(Height height) const {
  return epoch_length_blocks_ > 0 ? height / epoch_length_blocks_ : 0;
}

void Treasury::record_epoch_burn(const Coins& coins) { epoch_burned_.add(coins); }

Result<SeigniorageReport> Treasury::epoch_transition(Ledger& ledger) {
  SeigniorageReport report;
  report.minted = epoch_burned_;

  for (const auto& [denom, minted] : report.minted) {
    const Amount burn = reward_weight_.floor_mul(minted);
    report.burned.add(denom, burn);
    report.distributed.add(denom, minted - burn);
  }

  if (!report.minted.is_zero()) {
    if (auto st = ledger.mint(module::kTreasury, report.minted); !st) return st;
    if (auto st = ledger.burn(module::kTreasury, report.burned); !st) return st;
    if (auto st = ledger.send_module_to_module(module::kTreasury, module::kFeeCollector,
                                               report.distributed);
        !st) {
      return st;
    }
  }

  if (pending_tax_policy_) {
    tax_policy_ = *pending_tax_policy_;
    pending_tax_policy_.reset();
    report.tax_policy_applied = true;
  }
  if (pending_reward_policy_) {
    reward_policy_ = *pending_reward_policy_;
    pending_reward_policy_.reset();
    report.reward_policy_applied = true;
  }
  tax_rate_ = tax_policy_.clamp(tax_rate_, tax_rate_);
  reward_weight_ = reward_policy_.clamp(reward_weight_, reward_weight_);
  report.tax_rate = tax_rate_;
  report.reward_weight = reward_weight_;

  epoch_burned_ = Coins{};
  return report;
}

}  // namespace lunc
