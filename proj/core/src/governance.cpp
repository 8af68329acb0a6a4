#include "lunc/governance.hpp"

#include <json.hpp>

namespace lunc {

using nlohmann::json;

std::string_view to_string(ProposalKind kind) {
  switch (kind) {
    case ProposalKind::kText: return "text";
    case ProposalKind::kParamChange: return "param-change";
    case ProposalKind::kCommunitySpend: return "community-spend";
  }
  return "unknown";
}

std::string_view to_string(ProposalStatus status) {
  switch (status) {
    case ProposalStatus::kVoting: return "voting";
    case ProposalStatus::kPassed: return "passed";
    case ProposalStatus::kRejected: return "rejected";
    case ProposalStatus::kApplied: return "applied";
  }
  return "unknown";
}

std::string_view to_string(VoteOption option) {
  switch (option) {
    case VoteOption::kYes: return "yes";
    case VoteOption::kNo: return "no";
    case VoteOption::kNoWithVeto: return "no-with-veto";
    case VoteOption::kAbstain: return "abstain";
  }
  return "unknown";
}

std::optional<ProposalKind> parse_proposal_kind(std::string_view text) {
  if (text == "text") return ProposalKind::kText;
  if (text == "param-change") return ProposalKind::kParamChange;
  if (text == "community-spend") return ProposalKind::kCommunitySpend;
  return std::nullopt;
}

std::optional<VoteOption> parse_vote_option(std::string_view text) {
  if (text == "yes") return VoteOption::kYes;
  if (text == "no") return VoteOption::kNo;
  if (text == "no-with-veto" || text == "veto" || text == "no_with_veto") return VoteOption::kNoWithVeto;
  if (text == "abstain") return VoteOption::kAbstain;
  return std::nullopt;
}

namespace {

Status malformed(const ParamChange& c, std::string_view why) {
  return error(Errc::kMalformedProposal,
               c.subspace + "/" + c.key + ": " + std::string(why));
}

/// The value as JSON; plain unquoted text falls back to a JSON string.
json value_json(const std::string& text) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) return json(text);
  return parsed;
}

std::optional<Ratio> ratio_value(const json& v) {
  if (v.is_string()) return Ratio::try_parse(v.get<std::string>());
  if (v.is_number_integer()) return Ratio(v.get<std::int64_t>());
  return std::nullopt;
}

std::optional<PolicyConstraints> policy_value(const json& v) {
  if (!v.is_object()) return std::nullopt;
  PolicyConstraints p;
  for (const char* key : {"rate_min", "rate_max", "change_rate_max", "cap"}) {
    if (!v.contains(key)) return std::nullopt;
  }
  auto rmin = ratio_value(v["rate_min"]);
  auto rmax = ratio_value(v["rate_max"]);
  auto crm = ratio_value(v["change_rate_max"]);
  if (!rmin || !rmax || !crm) return std::nullopt;
  const json& cap = v["cap"];
  if (!cap.is_object() || !cap.contains("denom") || !cap.contains("amount") ||
      !cap["denom"].is_string()) {
    return std::nullopt;
  }
  try {
    const json& amt = cap["amount"];
    p.cap.amount = amt.is_string() ? parse_amount(amt.get<std::string>())
                                   : static_cast<Amount>(amt.get<std::uint64_t>());
  } catch (const std::exception&) {
    return std::nullopt;
  }
  p.cap.denom = cap["denom"].get<std::string>();
  p.rate_min = *rmin;
  p.rate_max = *rmax;
  p.change_rate_max = *crm;
  return p;
}

std::optional<bool> bool_value(const json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    if (v.get<std::string>() == "true") return true;
    if (v.get<std::string>() == "false") return false;
  }
  return std::nullopt;
}

}  // namespace

Result<TypedParamChange> parse_param_change(const ParamChange& change) {
  const json v = value_json(change.value);

  if (change.subspace == "treasury") {
    TreasuryPolicyChange out{};
    if (change.key == "TaxPolicy") {
      out.target = TreasuryPolicyChange::Target::kTaxPolicy;
    } else if (change.key == "RewardPolicy") {
      out.target = TreasuryPolicyChange::Target::kRewardPolicy;
    } else {
      return malformed(change, "unknown treasury key");
    }
    auto policy = policy_value(v);
    if (!policy) return malformed(change, "expected {rate_min, rate_max, cap, change_rate_max}");
    if (auto st = policy->validate(); !st) return malformed(change, st.message());
    out.policy = *policy;
    return TypedParamChange{out};
  }

  if (change.subspace == "distribution") {
    DistributionParamChange out{};
    if (change.key == "communitytax") {
      out.field = DistributionParamChange::Field::kCommunityTax;
    } else if (change.key == "baseproposerreward") {
      out.field = DistributionParamChange::Field::kBaseProposerReward;
    } else if (change.key == "bonusproposerreward") {
      out.field = DistributionParamChange::Field::kBonusProposerReward;
    } else {
      return malformed(change, "unknown distribution key");
    }
    auto r = ratio_value(v);
    if (!r || r->is_negative() || *r > Ratio(1)) return malformed(change, "expected decimal in [0, 1]");
    out.value = *r;
    return TypedParamChange{out};
  }

  if (change.subspace == "staking") {
    StakingParamChange out{};
    if (change.key == "UnbondingPeriodBlocks") {
      out.field = StakingParamChange::Field::kUnbondingPeriodBlocks;
      if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        out.blocks = v.get<std::int64_t>();
      } else if (v.is_string()) {
        try {
          out.blocks = static_cast<Height>(parse_amount(v.get<std::string>()));
        } catch (const std::exception&) {
          return malformed(change, "expected block count");
        }
      } else {
        return malformed(change, "expected block count");
      }
      return TypedParamChange{out};
    }
    if (change.key == "MaxDelegationPowerFraction") {
      out.field = StakingParamChange::Field::kMaxDelegationPowerFraction;
      auto r = ratio_value(v);
      if (!r || !(*r > Ratio(0)) || *r > Ratio(1)) return malformed(change, "expected fraction in (0, 1]");
      out.fraction = *r;
      return TypedParamChange{out};
    }
    return malformed(change, "unknown staking key");
  }

  if (change.subspace == "transfer") {
    TransferParamChange out{};
    if (change.key == "SendEnabled") {
      out.field = TransferParamChange::Field::kSendEnabled;
    } else if (change.key == "ReceiveEnabled") {
      out.field = TransferParamChange::Field::kReceiveEnabled;
    } else {
      return malformed(change, "unknown transfer key");
    }
    auto b = bool_value(v);
    if (!b) return malformed(change, "expected boolean");
    out.value = *b;
    return TypedParamChange{out};
  }

  return malformed(change, "unknown subspace");
}

bool tally_passes(const TallyResult& tally, const TallyParams& params) {
  if (tally.total_bonded == 0) return false;
  const Amount total = tally.total_votes();
  if (Ratio(to_bigint(total), to_bigint(tally.total_bonded)) < params.quorum) return false;
  const Amount decisive = tally.yes + tally.no + tally.no_with_veto;
  if (decisive == 0) return false;
  if (!(Ratio(to_bigint(tally.yes), to_bigint(decisive)) > params.threshold)) return false;
  if (!(Ratio(to_bigint(tally.no_with_veto), to_bigint(total)) < params.veto_threshold)) return false;
  return true;
}

Result<ProposalId> Governance::submit_proposal(ProposalContent content, Height height) {
  Proposal p;
  switch (content.kind) {
    case ProposalKind::kText:
      if (!content.changes.empty()) {
        return error(Errc::kMalformedProposal, "text proposal carries parameter changes");
      }
      break;
    case ProposalKind::kParamChange: {
      if (content.changes.empty()) return error(Errc::kMalformedProposal, "no parameter changes");
      bool tax = false;
      bool reward = false;
      for (const auto& c : content.changes) {
        auto typed = parse_param_change(c);
        if (!typed) return typed.status();
        if (const auto* t = std::get_if<TreasuryPolicyChange>(&typed.value())) {
          (t->target == TreasuryPolicyChange::Target::kTaxPolicy ? tax : reward) = true;
        }
        p.typed_changes.push_back(std::move(typed).value());
      }
      p.lone_treasury_policy = tax != reward;
      break;
    }
    case ProposalKind::kCommunitySpend:
      if (content.spend_amount.is_zero()) {
        return error(Errc::kMalformedProposal, "community spend of nothing");
      }
      if (!content.spend_target.burn && content.spend_target.recipient.empty()) {
        return error(Errc::kMalformedProposal, "community spend without recipient");
      }
      break;
  }

  p.id = next_id_++;
  p.content = std::move(content);
  p.submit_height = height;
  p.voting_end_height = height + params_.voting_period_blocks;
  const ProposalId id = p.id;
  proposals_.emplace(id, std::move(p));
  return id;
}

Status Governance::vote(std::string_view voter, ProposalId id, VoteOption option, Height height) {
  auto it = proposals_.find(id);
  if (it == proposals_.end()) return error(Errc::kUnknownProposal, std::to_string(id));
  if (it->second.status != ProposalStatus::kVoting || height > it->second.voting_end_height) {
    return error(Errc::kInvalidTx, "proposal " + std::to_string(id) + " is not in voting");
  }
  votes_[id][std::string(voter)] = option;
  return Status::ok();
}

Result<TallyResult> Governance::tally(ProposalId id, const Staking& staking, Height height) {
  auto it = proposals_.find(id);
  if (it == proposals_.end()) return error(Errc::kUnknownProposal, std::to_string(id));
  Proposal& p = it->second;
  if (height < p.voting_end_height) {
    return error(Errc::kStillInVoting, "voting ends at " + std::to_string(p.voting_end_height));
  }
  if (p.status != ProposalStatus::kVoting) return *p.tally;

  TallyResult result;
  result.total_bonded = staking.total_bonded_tokens();
  if (auto v = votes_.find(id); v != votes_.end()) {
    for (const auto& [voter, option] : v->second) {
      const Amount weight = staking.bonded_by(voter);
      switch (option) {
        case VoteOption::kYes: result.yes += weight; break;
        case VoteOption::kNo: result.no += weight; break;
        case VoteOption::kNoWithVeto: result.no_with_veto += weight; break;
        case VoteOption::kAbstain: result.abstain += weight; break;
      }
    }
  }
  p.tally = result;
  p.status = tally_passes(result, params_) ? ProposalStatus::kPassed : ProposalStatus::kRejected;
  return result;
}

Status Governance::mark_applied(ProposalId id) {
  auto it = proposals_.find(id);
  if (it == proposals_.end()) return error(Errc::kUnknownProposal, std::to_string(id));
  if (it->second.status != ProposalStatus::kPassed) {
    return error(Errc::kNotPassed, "proposal " + std::to_string(id) + " is " +
                                       std::string(to_string(it->second.status)));
  }
  it->second.status = ProposalStatus::kApplied;
  return Status::ok();
}

std::vector<ProposalId> Governance::due_for_tally(Height height) const {
  std::vector<ProposalId> out;
  for (const auto& [id, p] : proposals_) {
    if (p.status == ProposalStatus::kVoting && p.voting_end_height <= height) out.push_back(id);
  }
  return out;
}

const Proposal* Governance::find(ProposalId id) const {
  auto it = proposals_.find(id);
  return it == proposals_.end() ? nullptr : &it->second;
}

const std::map<std::string, VoteOption, std::less<>>* Governance::votes_for(ProposalId id) const {
  auto it = votes_.find(id);
  return it == votes_.end() ? nullptr : &it->second;
}

}  // namespace lunc
