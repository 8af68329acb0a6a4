#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lunc/coins.hpp"
#include "lunc/error.hpp"
#include "lunc/ledger.hpp"
#include "lunc/ratio.hpp"

namespace lunc {

/// "Arbitrarily high" default tax cap.
inline constexpr Amount kDefaultTaxCap = pow2(100);

/// Rate bounds a treasury policy enforces on the tax rate or reward weight.
struct PolicyConstraints {
  Ratio rate_min{0};
  Ratio rate_max{1};
  Coin cap{std::string(kTaxCapReferenceDenom), 0};
  Ratio change_rate_max{0};

  Status validate() const;

  /// Moves `prev` toward `requested` by at most change_rate_max, then
  /// clamps into [rate_min, rate_max]. The interval bound wins, so a
  /// freshly narrowed policy takes effect even with change_rate_max 0.
  Ratio clamp(const Ratio& prev, const Ratio& requested) const;

  friend bool operator==(const PolicyConstraints&, const PolicyConstraints&) = default;
};

struct SeigniorageReport {
  Coins minted;
  Coins burned;
  Coins distributed;
  /// Rates in force after the transition.
  Ratio tax_rate;
  Ratio reward_weight;
  bool tax_policy_applied = false;
  bool reward_policy_applied = false;
};

struct TreasuryConfig {
  PolicyConstraints tax_policy{.rate_min = Ratio(0), .rate_max = Ratio(1, 100)};
  PolicyConstraints reward_policy{.rate_min = Ratio(0), .rate_max = Ratio(1)};
  Ratio tax_rate{0};
  Ratio reward_weight{0};
  Height epoch_length_blocks = 86'400;
  std::map<std::string, Amount, std::less<>> tax_caps;
  Amount default_tax_cap = kDefaultTaxCap;
};

class Treasury {
 public:
  Treasury() = default;
  explicit Treasury(TreasuryConfig config);

  const Ratio& tax_rate() const { return tax_rate_; }
  const Ratio& reward_weight() const { return reward_weight_; }
  Amount tax_cap(std::string_view denom) const;
  const std::map<std::string, Amount, std::less<>>& tax_caps() const { return tax_caps_; }
  Amount default_tax_cap() const { return default_tax_cap_; }

  const PolicyConstraints& tax_policy() const { return tax_policy_; }
  const PolicyConstraints& reward_policy() const { return reward_policy_; }
  const std::optional<PolicyConstraints>& pending_tax_policy() const { return pending_tax_policy_; }
  const std::optional<PolicyConstraints>& pending_reward_policy() const {
    return pending_reward_policy_;
  }

  Height epoch_length_blocks() const { return epoch_length_blocks_; }
  bool is_epoch_boundary(Height height) const;
  std::int64_t epoch_of(Height height) const;

  void record_epoch_burn(const Coins& coins);
  const Coins& epoch_burned() const { return epoch_burned_; }

  /// Policy updates wait for the next epoch boundary before they bind.
  void queue_tax_policy(const PolicyConstraints& policy) { pending_tax_policy_ = policy; }
  void queue_reward_policy(const PolicyConstraints& policy) { pending_reward_policy_ = policy; }

  /// Mints the epoch's burned total into the Treasury account, burns
  /// floor(reward_weight * minted) per denom, sends the remainder to the
  /// fee collector for distribution, then applies queued policies and
  /// re-clamps the rates. Resets the epoch burn counter.
  Result<SeigniorageReport> epoch_transition(Ledger& ledger);

  friend bool operator==(const Treasury&, const Treasury&) = default;

 private:
  PolicyConstraints tax_policy_;
  PolicyConstraints reward_policy_;
  std::optional<PolicyConstraints> pending_tax_policy_;
  std::optional<PolicyConstraints> pending_reward_policy_;
  Ratio tax_rate_{0};
  Ratio reward_weight_{0};
  Height epoch_length_blocks_ = 86'400;
  std::map<std::string, Amount, std::less<>> tax_caps_;
  Amount default_tax_cap_ = kDefaultTaxCap;
  Coins epoch_burned_;
};

}  // namespace lunc
