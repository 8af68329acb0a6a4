#include "lunc/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "lunc/block_time.hpp"

namespace lunc {

namespace {

using json = nlohmann::json;

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& what) { throw ParseFailure(what); }

const json& need(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string str(const json& v, const char* what) {
  if (!v.is_string()) fail(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::string need_str(const json& obj, const char* key) { return str(need(obj, key), key); }

Amount amount(const json& v) {
  if (v.is_string()) return parse_amount(v.get<std::string>());
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<Amount>(v.get<std::int64_t>());
  fail("amount must be a non-negative integer or a decimal string");
}

Height height(const json& v, const char* what) {
  if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
  const auto h = v.get<std::int64_t>();
  if (h < 0) fail(std::string(what) + " must be >= 0");
  return h;
}

Ratio ratio(const json& v, const char* what) {
  std::optional<Ratio> r;
  if (v.is_string()) r = Ratio::try_parse(v.get<std::string>());
  if (v.is_number_integer()) r = Ratio(v.get<std::int64_t>());
  if (!r) fail(std::string(what) + " must be a decimal string such as \"0.012\"");
  return *r;
}

template <typename T>
void opt(const json& obj, const char* key, T& out, T (*conv)(const json&, const char*)) {
  if (obj.is_object() && obj.contains(key)) out = conv(obj.at(key), key);
}

void opt_amount(const json& obj, const char* key, Amount& out) {
  if (obj.is_object() && obj.contains(key)) out = amount(obj.at(key));
}

void opt_bool(const json& obj, const char* key, bool& out) {
  if (!obj.is_object() || !obj.contains(key)) return;
  if (!obj.at(key).is_boolean()) fail(std::string(key) + " must be a boolean");
  out = obj.at(key).get<bool>();
}

Coin coin_from_text(std::string_view item) {
  std::size_t split = 0;
  while (split < item.size() && item[split] >= '0' && item[split] <= '9') ++split;
  if (split == 0 || split == item.size() || item.find(',') != std::string_view::npos) {
    fail("malformed coin '" + std::string(item) + "'");
  }
  return Coin{std::string(item.substr(split)), parse_amount(item.substr(0, split))};
}

Coins coins_from_text(std::string_view text) {
  Coins out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const Coin c = coin_from_text(text.substr(pos, end - pos));
    out.add(c.denom, c.amount);
    pos = end + 1;
  }
  return out;
}

Coin coin(const json& v) {
  if (v.is_string()) return coin_from_text(v.get<std::string>());
  return Coin{need_str(v, "denom"), amount(need(v, "amount"))};
}

/// Coin string, list of {denom, amount}, or {denom: amount} object.
Coins coins(const json& v) {
  if (v.is_string()) return coins_from_text(v.get<std::string>());
  Coins out;
  if (v.is_array()) {
    for (const auto& c : v) {
      Coin one = coin(c);
      out.add(one.denom, one.amount);
    }
    return out;
  }
  if (v.is_object()) {
    for (const auto& [denom, amt] : v.items()) out.add(denom, amount(amt));
    return out;
  }
  fail("coins must be a string, list or object");
}

Coins opt_coins(const json& obj, const char* key) {
  return obj.contains(key) ? coins(obj.at(key)) : Coins{};
}

SoftwareVersion version(const json& v) {
  auto parsed = parse_version(str(v, "version"));
  if (!parsed) fail("unknown software version '" + v.get<std::string>() + "'");
  return *parsed;
}

PolicyConstraints policy(const json& v) {
  PolicyConstraints p;
  p.rate_min = ratio(need(v, "rate_min"), "rate_min");
  p.rate_max = ratio(need(v, "rate_max"), "rate_max");
  p.change_rate_max = ratio(need(v, "change_rate_max"), "change_rate_max");
  if (v.contains("cap")) p.cap = coin(v.at("cap"));
  if (auto st = p.validate(); !st) fail(st.message());
  return p;
}

// ---- genesis ----

void parse_staking(const json& s, GenesisSpec& spec) {
  if (s.contains("gates")) {
    const json& g = s.at("gates");
    opt(g, "staking_power_upgrade", spec.gates.staking_power_upgrade, height);
    opt(g, "delegate_power_revert", spec.gates.delegate_power_revert, height);
    opt(g, "staking_power_revert", spec.gates.staking_power_revert, height);
    if (g.contains("protect_power")) {
      spec.gates.protect_power = height(g.at("protect_power"), "protect_power");
    } else {
      spec.gates.protect_power = spec.gates.delegate_power_revert + protect_window_blocks();
    }
  }
  opt_amount(s, "power_reduction", spec.staking.power_reduction);
  opt(s, "unbonding_period_blocks", spec.staking.unbonding_period_blocks, height);
  opt(s, "max_delegation_power_fraction", spec.staking.max_delegation_power_fraction, ratio);
  opt_bool(s, "float32_cap_compat", spec.staking.float32_cap_compat);
  if (s.contains("bond_denom")) spec.staking.bond_denom = need_str(s, "bond_denom");
  if (s.contains("validators")) {
    for (const auto& v : s.at("validators")) {
      Validator val;
      val.operator_address = need_str(v, "address");
      val.tokens = amount(need(v, "tokens"));
      val.version = v.contains("version") ? version(v.at("version")) : SoftwareVersion::kV20;
      val.status = ValidatorStatus::kActive;
      if (v.contains("status")) {
        auto st = parse_validator_status(str(v.at("status"), "status"));
        if (!st) fail("unknown validator status");
        val.status = *st;
      }
      spec.validators.push_back(std::move(val));
    }
  }
}

void parse_treasury(const json& t, GenesisSpec& spec) {
  if (t.contains("tax_policy")) spec.treasury.tax_policy = policy(t.at("tax_policy"));
  if (t.contains("reward_policy")) spec.treasury.reward_policy = policy(t.at("reward_policy"));
  opt(t, "tax_rate", spec.treasury.tax_rate, ratio);
  opt(t, "reward_weight", spec.treasury.reward_weight, ratio);
  opt(t, "epoch_length_blocks", spec.treasury.epoch_length_blocks, height);
  opt_amount(t, "default_tax_cap", spec.treasury.default_tax_cap);
  if (t.contains("tax_caps")) {
    for (const auto& [denom, cap] : t.at("tax_caps").items()) spec.treasury.tax_caps[denom] = amount(cap);
  }
}

void parse_ante(const json& a, GenesisSpec& spec) {
  AnteConfig& ante = spec.chain.ante;
  opt(a, "tax_power_upgrade_height", ante.tax_power_upgrade_height, height);
  opt(a, "gas_price", ante.gas_price, ratio);
  if (a.contains("fee_denom")) ante.fee_denom = need_str(a, "fee_denom");
  if (a.contains("exempt_denoms")) {
    ante.exempt_denoms.clear();
    for (const auto& d : a.at("exempt_denoms")) ante.exempt_denoms.insert(str(d, "exempt denom"));
  }
}

GenesisSpec genesis_from_json(const json& j) {
  GenesisSpec spec;
  if (!j.is_object()) fail("genesis must be a JSON object");
  if (j.contains("chain_id")) spec.chain.chain_id = need_str(j, "chain_id");
  opt(j, "genesis_height", spec.chain.genesis_height, height);
  if (j.contains("genesis_time")) spec.chain.genesis_time = height(j.at("genesis_time"), "genesis_time");
  if (j.contains("denoms")) {
    spec.chain.denoms.clear();
    for (const auto& d : j.at("denoms")) spec.chain.denoms.push_back(str(d, "denom"));
  }
  if (j.contains("accounts")) {
    for (const auto& a : j.at("accounts")) {
      spec.accounts.emplace_back(need_str(a, "address"), coin(a));
    }
  }
  if (j.contains("module_accounts")) {
    for (const auto& m : j.at("module_accounts")) {
      spec.module_accounts.emplace_back(need_str(m, "module"), coin(m));
    }
  }
  if (j.contains("staking")) parse_staking(j.at("staking"), spec);
  if (j.contains("ante")) parse_ante(j.at("ante"), spec);
  if (j.contains("treasury")) parse_treasury(j.at("treasury"), spec);
  if (j.contains("distribution")) {
    const json& d = j.at("distribution");
    opt(d, "community_tax", spec.distribution.community_tax, ratio);
    opt(d, "base_proposer_reward", spec.distribution.base_proposer_reward, ratio);
    opt(d, "bonus_proposer_reward", spec.distribution.bonus_proposer_reward, ratio);
  }
  if (j.contains("governance")) {
    const json& g = j.at("governance");
    opt(g, "quorum", spec.governance.quorum, ratio);
    opt(g, "threshold", spec.governance.threshold, ratio);
    opt(g, "veto_threshold", spec.governance.veto_threshold, ratio);
    opt(g, "voting_period_blocks", spec.governance.voting_period_blocks, height);
  }
  if (j.contains("transfer")) {
    opt_bool(j.at("transfer"), "send_enabled", spec.transfer.send_enabled);
    opt_bool(j.at("transfer"), "receive_enabled", spec.transfer.receive_enabled);
  }
  return spec;
}

// ---- scenario ----

ProposalContent proposal(const json& p) {
  ProposalContent c;
  auto kind = parse_proposal_kind(need_str(p, "kind"));
  if (!kind) fail("unknown proposal kind");
  c.kind = *kind;
  if (p.contains("title")) c.title = need_str(p, "title");
  if (p.contains("description")) c.description = need_str(p, "description");
  if (p.contains("changes")) {
    for (const auto& ch : p.at("changes")) {
      const json& value = need(ch, "value");
      c.changes.push_back(ParamChange{need_str(ch, "subspace"), need_str(ch, "key"), value.dump()});
    }
  }
  if (c.kind == ProposalKind::kCommunitySpend) {
    bool burn = false;
    opt_bool(p, "burn", burn);
    c.spend_target = burn ? SpendTarget::burn_target() : SpendTarget::account(need_str(p, "recipient"));
    c.spend_amount = coins(need(p, "amount"));
  }
  return c;
}

VoteOption vote_option(const json& v) {
  auto o = parse_vote_option(str(v, "option"));
  if (!o) fail("unknown vote option '" + v.get<std::string>() + "'");
  return *o;
}

ProposalId proposal_id(const json& v) { return static_cast<ProposalId>(height(v, "proposal_id")); }

Msg msg(const json& m) {
  const std::string type = need_str(m, "type");
  if (type == "send") return SendMsg{need_str(m, "from"), need_str(m, "to"), coins(need(m, "amount"))};
  if (type == "multi-send") {
    MultiSendMsg out;
    for (const auto& e : need(m, "inputs")) out.inputs.push_back({need_str(e, "address"), coins(need(e, "coins"))});
    for (const auto& e : need(m, "outputs")) out.outputs.push_back({need_str(e, "address"), coins(need(e, "coins"))});
    return out;
  }
  if (type == "swap-send") {
    return SwapSendMsg{need_str(m, "from"), need_str(m, "to"), coin(need(m, "offer")), need_str(m, "ask_denom")};
  }
  if (type == "instantiate-contract") {
    return InstantiateContractMsg{need_str(m, "sender"), need_str(m, "contract"), opt_coins(m, "funds")};
  }
  if (type == "execute-contract") {
    return ExecuteContractMsg{need_str(m, "sender"), need_str(m, "contract"), opt_coins(m, "funds")};
  }
  if (type == "exec") {
    ExecMsg out;
    out.grantee = need_str(m, "grantee");
    for (const auto& inner : need(m, "msgs")) out.msgs.push_back(msg(inner));
    return out;
  }
  if (type == "delegate") return DelegateMsg{need_str(m, "delegator"), need_str(m, "validator"), coin(need(m, "amount"))};
  if (type == "undelegate") {
    return UndelegateMsg{need_str(m, "delegator"), need_str(m, "validator"), coin(need(m, "amount"))};
  }
  if (type == "create-validator") {
    return CreateValidatorMsg{need_str(m, "operator_address"),
                              m.contains("version") ? version(m.at("version")) : SoftwareVersion::kV21};
  }
  if (type == "vote") {
    return VoteMsg{need_str(m, "voter"), proposal_id(need(m, "proposal_id")), vote_option(need(m, "option"))};
  }
  if (type == "submit-proposal") return SubmitProposalMsg{need_str(m, "proposer"), proposal(need(m, "proposal"))};
  if (type == "withdraw-rewards") return WithdrawRewardsMsg{need_str(m, "delegator"), need_str(m, "validator")};
  fail("unknown message type '" + type + "'");
}

Tx tx(const json& t) {
  Tx out;
  out.fee_payer = need_str(t, "fee_payer");
  out.declared_fee = opt_coins(t, "fee");
  if (t.contains("gas_limit")) out.gas_limit = static_cast<std::uint64_t>(height(t.at("gas_limit"), "gas_limit"));
  for (const auto& m : need(t, "msgs")) out.msgs.push_back(msg(m));
  return out;
}

ScenarioAction action(const json& e) {
  const std::string type = need_str(e, "type");
  if (type == "submit-tx") {
    SubmitTxEvent out{.tx = tx(need(e, "tx")), .delay = 0, .label = {}};
    opt(e, "delay", out.delay, height);
    if (e.contains("label")) out.label = need_str(e, "label");
    return out;
  }
  if (type == "upgrade-validator") return UpgradeValidatorEvent{need_str(e, "validator"), version(need(e, "version"))};
  if (type == "submit-proposal") return SubmitProposalEvent{proposal(need(e, "proposal"))};
  if (type == "cast-vote") {
    return CastVoteEvent{need_str(e, "voter"), proposal_id(need(e, "proposal_id")), vote_option(need(e, "option"))};
  }
  if (type == "sniper-arm") {
    SniperArmEvent out;
    out.target_height = height(need(e, "target_height"), "target_height");
    out.tx = tx(need(e, "tx"));
    if (e.contains("inclusion_delay")) out.inclusion_delay = height(e.at("inclusion_delay"), "inclusion_delay");
    if (e.contains("label")) out.label = need_str(e, "label");
    return out;
  }
  if (type == "community-spend") {
    bool burn = false;
    opt_bool(e, "burn", burn);
    return CommunitySpendEvent{burn ? SpendTarget::burn_target() : SpendTarget::account(need_str(e, "recipient")),
                               coins(need(e, "amount"))};
  }
  if (type == "rollback-to") return RollbackToEvent{height(need(e, "target_height"), "target_height")};
  if (type == "set-precommit-fraction") return SetPrecommitFractionEvent{ratio(need(e, "fraction"), "fraction")};
  fail("unknown event type '" + type + "'");
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) fail("scenario must be a JSON object");
  Scenario s;
  if (j.contains("name")) s.name = need_str(j, "name");
  s.end_height = height(need(j, "end_height"), "end_height");
  opt(j, "inclusion_delay", s.inclusion_delay, height);
  opt(j, "report_interval", s.report_interval, height);
  if (j.contains("events")) {
    for (const auto& e : j.at("events")) {
      s.events.push_back(ScenarioEvent{height(need(e, "height"), "height"), action(e)});
    }
  }
  return s;
}

template <typename T, typename F>
Result<T> guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return error(Errc::kParseError, e.what());
  }
}

Result<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return error(Errc::kParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace


Result<ChainState> build_genesis(const GenesisSpec& spec) {
  for (auto st : {spec.staking.validate(), spec.gates.validate(), spec.distribution.validate(),
                  spec.treasury.tax_policy.validate(), spec.treasury.reward_policy.validate()}) {
    if (!st) return error(Errc::kParseError, st.describe());
  }
  if (spec.treasury.epoch_length_blocks <= 0) return error(Errc::kParseError, "epoch_length_blocks must be > 0");
  if (spec.governance.voting_period_blocks < 0) return error(Errc::kParseError, "voting_period_blocks must be >= 0");

  ChainState state;
  state.config = spec.chain;
  state.height = spec.chain.genesis_height;
  state.staking = Staking(spec.staking, spec.gates);
  state.treasury = Treasury(spec.treasury);
  state.distribution = Distribution(spec.distribution);
  state.governance = Governance(spec.governance);
  state.transfer = spec.transfer;
  try {
    for (const auto& [address, c] : spec.accounts) state.ledger.credit_genesis_account(address, c);
    for (const auto& [name, c] : spec.module_accounts) {
      if (auto st = state.ledger.credit_genesis_module(name, c); !st) {
        return error(Errc::kParseError, st.describe());
      }
    }
    for (const auto& v : spec.validators) {
      if (auto st = state.staking.add_genesis_validator(state.ledger, v); !st) {
        return error(Errc::kParseError, st.describe());
      }
    }
  } catch (const AmountOverflow& e) {
    return error(Errc::kParseError, e.what());
  }
  if (auto st = check_invariants(state); !st) return error(Errc::kParseError, st.describe());
  return state;
}

Result<GenesisSpec> parse_genesis(std::string_view json_text) {
  return guarded<GenesisSpec>([&] { return genesis_from_json(json::parse(json_text)); });
}

Result<Scenario> parse_scenario(std::string_view json_text) {
  return guarded<Scenario>([&] { return scenario_from_json(json::parse(json_text)); });
}

Result<GenesisSpec> load_genesis_file(const std::filesystem::path& path) {
  auto text = read_file(path);
  if (!text) return text.status();
  return parse_genesis(text.value());
}

Result<Scenario> load_scenario_file(const std::filesystem::path& path) {
  auto text = read_file(path);
  if (!text) return text.status();
  return parse_scenario(text.value());
}

Result<Coins> parse_coins(std::string_view text) {
  return guarded<Coins>([&] { return coins_from_text(text); });
}

}  // namespace lunc
