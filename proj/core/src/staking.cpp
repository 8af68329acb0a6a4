#include "lunc/staking.hpp"

#include <algorithm>

namespace lunc {

std::string_view to_string(ValidatorStatus status) {
  switch (status) {
    case ValidatorStatus::kActive: return "active";
    case ValidatorStatus::kInactive: return "inactive";
    case ValidatorStatus::kJailed: return "jailed";
  }
  return "unknown";
}

std::optional<ValidatorStatus> parse_validator_status(std::string_view text) {
  if (text == "active") return ValidatorStatus::kActive;
  if (text == "inactive") return ValidatorStatus::kInactive;
  if (text == "jailed") return ValidatorStatus::kJailed;
  return std::nullopt;
}

std::string_view to_string(SoftwareVersion version) {
  switch (version) {
    case SoftwareVersion::kV20: return "v20";
    case SoftwareVersion::kV21: return "v21";
  }
  return "unknown";
}

std::optional<SoftwareVersion> parse_version(std::string_view text) {
  if (text == "v20" || text == "v0.5.20") return SoftwareVersion::kV20;
  if (text == "v21" || text == "v0.5.21" || text == "v0.5.21-testnet") return SoftwareVersion::kV21;
  return std::nullopt;
}

ProtocolRules rules_for(SoftwareVersion version) {
  switch (version) {
    case SoftwareVersion::kV20: return {.revert_gates = false, .power_cap = false};
    case SoftwareVersion::kV21: return {.revert_gates = true, .power_cap = true};
  }
  return {};
}

HeightGates HeightGates::mainnet() { return HeightGates{}; }

Status HeightGates::validate() const {
  if (!(staking_power_upgrade < delegate_power_revert)) {
    return error(Errc::kInvalidTx, "gates: staking_power_upgrade must be < delegate_power_revert");
  }
  if (!(delegate_power_revert <= protect_power)) {
    return error(Errc::kInvalidTx, "gates: delegate_power_revert must be <= protect_power");
  }
  if (!(delegate_power_revert < staking_power_revert)) {
    return error(Errc::kInvalidTx, "gates: delegate_power_revert must be < staking_power_revert");
  }
  return Status::ok();
}

bool HeightGates::delegate_disabled(Height h, const ProtocolRules& rules) const {
  if (!rules.revert_gates) return h > staking_power_upgrade;
  return h > staking_power_upgrade && h < delegate_power_revert;
}

bool HeightGates::create_validator_disabled(Height h, const ProtocolRules& rules) const {
  if (!rules.revert_gates) return h > staking_power_upgrade;
  return h > staking_power_upgrade && h < staking_power_revert;
}

bool HeightGates::in_protect_window(Height h) const {
  return h >= delegate_power_revert && h < protect_power;
}

Status StakingParams::validate() const {
  if (power_reduction < 1) return error(Errc::kInvalidTx, "power_reduction must be >= 1");
  if (unbonding_period_blocks < 0) return error(Errc::kInvalidTx, "unbonding period must be >= 0");
  if (!(max_delegation_power_fraction > Ratio(0)) || max_delegation_power_fraction > Ratio(1)) {
    return error(Errc::kInvalidTx, "max_delegation_power_fraction must be in (0, 1]");
  }
  if (bond_denom.empty()) return error(Errc::kInvalidTx, "bond denom must be set");
  return Status::ok();
}

ConsensusPower tokens_to_consensus_power(Amount tokens, const StakingParams& params) {
  return tokens / params.power_reduction;
}

bool check_power_cap(ConsensusPower validator_power, ConsensusPower total_power, Amount delta_tokens,
                     const StakingParams& params) {
  const ConsensusPower d = tokens_to_consensus_power(delta_tokens, params);
  const BigInt new_validator = to_bigint(validator_power) + to_bigint(d);
  const BigInt new_total = to_bigint(total_power) + to_bigint(d);

  if (params.float32_cap_compat) {
    const float fraction = static_cast<float>(new_validator.convert_to<double>()) /
                           static_cast<float>(new_total.convert_to<double>());
    const auto cap = static_cast<float>(params.max_delegation_power_fraction.to_double());
    // NaN (0/0) compares false, matching the listing.
    return !(fraction > cap);
  }

  if (new_total == 0) return true;  // nothing bonded and nothing added
  const Ratio& cap = params.max_delegation_power_fraction;
  // new_validator / new_total > num / den  <=>  new_validator * den > num * new_total
  return !(new_validator * cap.denominator() > cap.numerator() * new_total);
}

Staking::Staking(StakingParams params, HeightGates gates)
    : params_(std::move(params)), gates_(gates) {}

void Staking::refresh_status(Validator& v) {
  if (v.status == ValidatorStatus::kJailed) return;
  v.status = v.tokens > 0 ? ValidatorStatus::kActive : ValidatorStatus::kInactive;
}

Status Staking::add_genesis_validator(Ledger& ledger, Validator validator) {
  if (validators_.contains(validator.operator_address)) {
    return error(Errc::kDuplicateValidator, validator.operator_address);
  }
  if (validator.tokens > 0) {
    if (auto st = ledger.credit_genesis_module(module::kBondedPool,
                                               Coin{params_.bond_denom, validator.tokens});
        !st) {
      return st;
    }
    delegations_[{validator.operator_address, validator.operator_address}] += validator.tokens;
  }
  refresh_status(validator);
  const std::string key = validator.operator_address;
  validators_.emplace(key, std::move(validator));
  return Status::ok();
}

Status Staking::create_validator(const ValidatorDescriptor& candidate, Height height,
                                 const ProtocolRules& rules) {
  if (gates_.create_validator_disabled(height, rules)) {
    return error(Errc::kMsgNotSupported, "message type MsgCreateValidator is not supported");
  }
  if (candidate.operator_address.empty()) return error(Errc::kInvalidTx, "empty operator address");
  if (validators_.contains(candidate.operator_address)) {
    return error(Errc::kDuplicateValidator, candidate.operator_address);
  }
  validators_.emplace(candidate.operator_address,
                      Validator{.operator_address = candidate.operator_address,
                                .tokens = 0,
                                .status = ValidatorStatus::kInactive,
                                .version = candidate.version});
  return Status::ok();
}

Status Staking::delegate(Ledger& ledger, std::string_view delegator, std::string_view validator,
                         const Coin& amount, Height height, const ProtocolRules& rules) {
  if (gates_.delegate_disabled(height, rules)) {
    return error(Errc::kMsgNotSupported, "message type MsgDelegate is not supported");
  }
  auto it = validators_.find(validator);
  if (it == validators_.end()) return error(Errc::kUnknownValidator, std::string(validator));
  if (it->second.status == ValidatorStatus::kJailed) {
    return error(Errc::kInvalidTx, "validator " + std::string(validator) + " is jailed");
  }
  if (amount.denom != params_.bond_denom) {
    return error(Errc::kInvalidTx, "delegation denom must be " + params_.bond_denom);
  }
  if (amount.amount == 0) return error(Errc::kInvalidTx, "delegation amount must be positive");

  if (rules.power_cap && height != 0 && gates_.in_protect_window(height)) {
    if (!check_power_cap(validator_power(validator), total_voting_power(), amount.amount, params_)) {
      return error(Errc::kPowerCapExceeded,
                   "delegation would push " + std::string(validator) + " above " +
                       params_.max_delegation_power_fraction.to_decimal(4) + " of voting power");
    }
  }

  if (auto st = ledger.send_account_to_module(delegator, module::kBondedPool, Coins(amount)); !st) {
    return st;
  }
  Validator& v = it->second;
  v.tokens = checked_add(v.tokens, amount.amount);
  delegations_[{std::string(delegator), std::string(validator)}] += amount.amount;
  refresh_status(v);
  return Status::ok();
}

Result<UnbondingEntry> Staking::undelegate(Ledger& ledger, std::string_view delegator,
                                           std::string_view validator, const Coin& amount,
                                           Height height) {
  auto del = delegations_.find({std::string(delegator), std::string(validator)});
  if (del == delegations_.end()) {
    return error(Errc::kUnknownDelegation,
                 std::string(delegator) + " has no delegation to " + std::string(validator));
  }
  if (amount.denom != params_.bond_denom) {
    return error(Errc::kInvalidTx, "undelegation denom must be " + params_.bond_denom);
  }
  if (amount.amount == 0) return error(Errc::kInvalidTx, "undelegation amount must be positive");
  if (del->second < amount.amount) {
    return error(Errc::kInsufficientShares, "delegation holds " + to_string(del->second) +
                                                ", requested " + to_string(amount.amount));
  }
  if (auto st = ledger.send_module_to_module(module::kBondedPool, module::kNotBondedPool,
                                             Coins(amount));
      !st) {
    return st;
  }

  del->second -= amount.amount;
  if (del->second == 0) delegations_.erase(del);
  Validator& v = validators_.find(validator)->second;
  v.tokens -= amount.amount;
  refresh_status(v);

  UnbondingEntry entry{.delegator = std::string(delegator),
                       .validator = std::string(validator),
                       .amount = amount.amount,
                       .creation_height = height,
                       .completion_height = height + params_.unbonding_period_blocks};
  auto pos = std::upper_bound(
      unbonding_.begin(), unbonding_.end(), entry.completion_height,
      [](Height h, const UnbondingEntry& e) { return h < e.completion_height; });
  unbonding_.insert(pos, entry);
  return entry;
}

std::vector<UnbondingEntry> Staking::mature_unbondings(Ledger& ledger, Height height) {
  std::vector<UnbondingEntry> matured;
  while (!unbonding_.empty() && unbonding_.front().completion_height <= height) {
    UnbondingEntry entry = std::move(unbonding_.front());
    unbonding_.pop_front();
    // The not-bonded pool holds exactly the queued amounts.
    auto st = ledger.send_module_to_account(module::kNotBondedPool, entry.delegator,
                                            Coins(Coin{params_.bond_denom, entry.amount}));
    (void)st;
    matured.push_back(std::move(entry));
  }
  return matured;
}

Status Staking::set_version(std::string_view validator, SoftwareVersion version) {
  auto it = validators_.find(validator);
  if (it == validators_.end()) return error(Errc::kUnknownValidator, std::string(validator));
  it->second.version = version;
  return Status::ok();
}

Status Staking::set_status(std::string_view validator, ValidatorStatus status) {
  auto it = validators_.find(validator);
  if (it == validators_.end()) return error(Errc::kUnknownValidator, std::string(validator));
  it->second.status = status;
  if (status != ValidatorStatus::kJailed) refresh_status(it->second);
  return Status::ok();
}

ConsensusPower Staking::validator_power(std::string_view validator) const {
  auto it = validators_.find(validator);
  if (it == validators_.end() || it->second.status != ValidatorStatus::kActive) return 0;
  return tokens_to_consensus_power(it->second.tokens, params_);
}

ConsensusPower Staking::total_voting_power() const {
  ConsensusPower total = 0;
  for (const auto& [_, v] : validators_) {
    if (v.status == ValidatorStatus::kActive) {
      total = checked_add(total, tokens_to_consensus_power(v.tokens, params_));
    }
  }
  return total;
}

Amount Staking::bonded_by(std::string_view delegator) const {
  Amount total = 0;
  for (const auto& [key, shares] : delegations_) {
    if (key.delegator == delegator) total = checked_add(total, shares);
  }
  return total;
}

Amount Staking::total_bonded_tokens() const {
  Amount total = 0;
  for (const auto& [_, v] : validators_) total = checked_add(total, v.tokens);
  return total;
}

Amount Staking::delegation_shares(std::string_view delegator, std::string_view validator) const {
  auto it = delegations_.find({std::string(delegator), std::string(validator)});
  return it == delegations_.end() ? Amount{0} : it->second;
}

const Validator* Staking::find_validator(std::string_view address) const {
  auto it = validators_.find(address);
  return it == validators_.end() ? nullptr : &it->second;
}

Status Staking::check_invariants(const Ledger& ledger) const {
  std::map<std::string, Amount, std::less<>> shares_by_validator;
  for (const auto& [key, shares] : delegations_) {
    if (shares == 0) return error(Errc::kInternalInconsistency, "zero-share delegation retained");
    if (!validators_.contains(key.validator)) {
      return error(Errc::kInternalInconsistency, "delegation to unknown validator " + key.validator);
    }
    shares_by_validator[key.validator] += shares;
  }
  for (const auto& [address, v] : validators_) {
    const auto it = shares_by_validator.find(address);
    const Amount shares = it == shares_by_validator.end() ? Amount{0} : it->second;
    if (shares != v.tokens) {
      return error(Errc::kInternalInconsistency, "share identity broken for " + address + ": shares " +
                                                     to_string(shares) + " != tokens " +
                                                     to_string(v.tokens));
    }
  }
  if (ledger.module_balance(module::kBondedPool).amount_of(params_.bond_denom) !=
      total_bonded_tokens()) {
    return error(Errc::kInternalInconsistency, "bonded pool does not match validator tokens");
  }
  Amount unbonding = 0;
  for (const auto& e : unbonding_) unbonding += e.amount;
  if (ledger.module_balance(module::kNotBondedPool).amount_of(params_.bond_denom) != unbonding) {
    return error(Errc::kInternalInconsistency, "not-bonded pool does not match unbonding queue");
  }
  return Status::ok();
}

}  // namespace lunc
