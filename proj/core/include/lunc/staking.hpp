#pragma once

#include <compare>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lunc/coins.hpp"
#include "lunc/error.hpp"
#include "lunc/ledger.hpp"
#include "lunc/ratio.hpp"

namespace lunc {

/// Validator weight: bonded tokens divided by the power-reduction divisor.
using ConsensusPower = Amount;

enum class ValidatorStatus { kActive, kInactive, kJailed };
std::string_view to_string(ValidatorStatus status);
std::optional<ValidatorStatus> parse_validator_status(std::string_view text);

/// Node software a validator runs. v20 carries the permanent staking
/// shutdown, v21 the revert heights and the protect-window power cap.
enum class SoftwareVersion { kV20, kV21 };
std::string_view to_string(SoftwareVersion version);
std::optional<SoftwareVersion> parse_version(std::string_view text);

/// Version-dependent branches of the state machine. Everything not listed
/// here behaves identically across versions.
struct ProtocolRules {
  bool revert_gates = true;
  bool power_cap = true;

  friend bool operator==(const ProtocolRules&, const ProtocolRules&) = default;
};
ProtocolRules rules_for(SoftwareVersion version);

struct HeightGates {
  Height staking_power_upgrade = 7'603'700;
  Height delegate_power_revert = 8'208'649;
  Height staking_power_revert = 8'905'758;
  Height protect_power = 8'208'649 + 740'534;

  static HeightGates mainnet();

  Status validate() const;

  /// upgrade < h < delegate_revert (revert rules) or h > upgrade (v20).
  bool delegate_disabled(Height h, const ProtocolRules& rules) const;
  /// upgrade < h < staking_revert (revert rules) or h > upgrade (v20).
  bool create_validator_disabled(Height h, const ProtocolRules& rules) const;
  /// delegate_revert <= h < protect_power.
  bool in_protect_window(Height h) const;

  friend bool operator==(const HeightGates&, const HeightGates&) = default;
};

struct StakingParams {
  Amount power_reduction = 1'000'000;
  Height unbonding_period_blocks = 259'200;
  Ratio max_delegation_power_fraction{1, 4};
  /// Evaluate the cap with 32-bit floats like the original listing.
  bool float32_cap_compat = false;
  std::string bond_denom{kNativeDenom};

  Status validate() const;

  friend bool operator==(const StakingParams&, const StakingParams&) = default;
};

struct Validator {
  std::string operator_address;
  Amount tokens = 0;
  ValidatorStatus status = ValidatorStatus::kInactive;
  SoftwareVersion version = SoftwareVersion::kV20;

  friend bool operator==(const Validator&, const Validator&) = default;
};

struct ValidatorDescriptor {
  std::string operator_address;
  SoftwareVersion version = SoftwareVersion::kV21;
};

struct DelegationKey {
  std::string delegator;
  std::string validator;

  friend auto operator<=>(const DelegationKey&, const DelegationKey&) = default;
};

struct UnbondingEntry {
  std::string delegator;
  std::string validator;
  Amount amount = 0;
  Height creation_height = 0;
  Height completion_height = 0;

  friend bool operator==(const UnbondingEntry&, const UnbondingEntry&) = default;
};

ConsensusPower tokens_to_consensus_power(Amount tokens, const StakingParams& params);

/// True (pass) unless (validator_power + d) / (total_power + d) exceeds the
/// configured fraction, with d = delta_tokens / power_reduction.
bool check_power_cap(ConsensusPower validator_power, ConsensusPower total_power, Amount delta_tokens,
                     const StakingParams& params);

class Staking {
 public:
  using ValidatorMap = std::map<std::string, Validator, std::less<>>;
  using DelegationMap = std::map<DelegationKey, Amount>;

  Staking() = default;
  Staking(StakingParams params, HeightGates gates);

  /// Registers a validator with a self-delegation of `validator.tokens`,
  /// crediting the bonded pool as genesis supply.
  Status add_genesis_validator(Ledger& ledger, Validator validator);

  Status create_validator(const ValidatorDescriptor& candidate, Height height,
                          const ProtocolRules& rules);
  Status delegate(Ledger& ledger, std::string_view delegator, std::string_view validator,
                  const Coin& amount, Height height, const ProtocolRules& rules);
  Result<UnbondingEntry> undelegate(Ledger& ledger, std::string_view delegator,
                                    std::string_view validator, const Coin& amount, Height height);
  /// Pays out every entry whose completion height is <= `height`.
  std::vector<UnbondingEntry> mature_unbondings(Ledger& ledger, Height height);

  Status set_version(std::string_view validator, SoftwareVersion version);
  Status set_status(std::string_view validator, ValidatorStatus status);

  ConsensusPower validator_power(std::string_view validator) const;
  /// Sum of consensus power over active validators.
  ConsensusPower total_voting_power() const;
  /// Tokens `delegator` has bonded across all validators.
  Amount bonded_by(std::string_view delegator) const;
  Amount total_bonded_tokens() const;
  Amount delegation_shares(std::string_view delegator, std::string_view validator) const;

  const Validator* find_validator(std::string_view address) const;
  const ValidatorMap& validators() const { return validators_; }
  const DelegationMap& delegations() const { return delegations_; }
  const std::deque<UnbondingEntry>& unbonding_queue() const { return unbonding_; }

  const StakingParams& params() const { return params_; }
  StakingParams& mutable_params() { return params_; }
  const HeightGates& gates() const { return gates_; }

  /// Share identity per validator and pool balances against the ledger.
  Status check_invariants(const Ledger& ledger) const;

  friend bool operator==(const Staking&, const Staking&) = default;

 private:
  void refresh_status(Validator& v);

  StakingParams params_;
  HeightGates gates_;
  ValidatorMap validators_;
  DelegationMap delegations_;
  std::deque<UnbondingEntry> unbonding_;  // ordered by completion height
};

}  // namespace lunc
