#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lunc/coins.hpp"
#include "lunc/distribution.hpp"
#include "lunc/error.hpp"
#include "lunc/ratio.hpp"
#include "lunc/staking.hpp"
#include "lunc/treasury.hpp"

namespace lunc {

using ProposalId = std::uint64_t;

enum class ProposalKind { kText, kParamChange, kCommunitySpend };
enum class ProposalStatus { kVoting, kPassed, kRejected, kApplied };
enum class VoteOption { kYes, kNo, kNoWithVeto, kAbstain };

std::string_view to_string(ProposalKind kind);
std::string_view to_string(ProposalStatus status);
std::string_view to_string(VoteOption option);
std::optional<ProposalKind> parse_proposal_kind(std::string_view text);
std::optional<VoteOption> parse_vote_option(std::string_view text);

/// One (subspace, key, value) entry of a parameter-change proposal. `value`
/// is JSON text: a quoted decimal string, a bool, or a policy object.
struct ParamChange {
  std::string subspace;
  std::string key;
  std::string value;

  friend bool operator==(const ParamChange&, const ParamChange&) = default;
};

struct TreasuryPolicyChange {
  enum class Target { kTaxPolicy, kRewardPolicy } target;
  PolicyConstraints policy;
  friend bool operator==(const TreasuryPolicyChange&, const TreasuryPolicyChange&) = default;
};

struct DistributionParamChange {
  enum class Field { kCommunityTax, kBaseProposerReward, kBonusProposerReward } field;
  Ratio value;
  friend bool operator==(const DistributionParamChange&, const DistributionParamChange&) = default;
};

struct StakingParamChange {
  enum class Field { kUnbondingPeriodBlocks, kMaxDelegationPowerFraction } field;
  Height blocks = 0;
  Ratio fraction;
  friend bool operator==(const StakingParamChange&, const StakingParamChange&) = default;
};

/// IBC transfer flags. Stored only; they gate nothing.
struct TransferParamChange {
  enum class Field { kSendEnabled, kReceiveEnabled } field;
  bool value = false;
  friend bool operator==(const TransferParamChange&, const TransferParamChange&) = default;
};

using TypedParamChange =
    std::variant<TreasuryPolicyChange, DistributionParamChange, StakingParamChange, TransferParamChange>;

/// Validates subspace, key and value. Unknown subspaces or keys and
/// unparseable values are MalformedProposal.
Result<TypedParamChange> parse_param_change(const ParamChange& change);

struct ProposalContent {
  ProposalKind kind = ProposalKind::kText;
  std::string title;
  std::string description;
  std::vector<ParamChange> changes;  // kParamChange
  SpendTarget spend_target;          // kCommunitySpend
  Coins spend_amount;                // kCommunitySpend

  friend bool operator==(const ProposalContent&, const ProposalContent&) = default;
};

struct TallyParams {
  Ratio quorum{40, 100};
  Ratio threshold{50, 100};
  Ratio veto_threshold{334, 1000};
  Height voting_period_blocks = 12'343;

  friend bool operator==(const TallyParams&, const TallyParams&) = default;
};

struct TallyResult {
  Amount yes = 0;
  Amount no = 0;
  Amount no_with_veto = 0;
  Amount abstain = 0;
  Amount total_bonded = 0;

  Amount total_votes() const { return yes + no + no_with_veto + abstain; }
  friend bool operator==(const TallyResult&, const TallyResult&) = default;
};

/// turnout >= quorum, yes / (yes + no + veto) > threshold and
/// veto / total < veto_threshold.
bool tally_passes(const TallyResult& tally, const TallyParams& params);

struct Proposal {
  ProposalId id = 0;
  ProposalContent content;
  std::vector<TypedParamChange> typed_changes;
  Height submit_height = 0;
  Height voting_end_height = 0;
  ProposalStatus status = ProposalStatus::kVoting;
  std::optional<TallyResult> tally;
  /// Treasury policy changed without its counterpart in the same proposal.
  bool lone_treasury_policy = false;

  friend bool operator==(const Proposal&, const Proposal&) = default;
};

class Governance {
 public:
  Governance() = default;
  explicit Governance(TallyParams params) : params_(std::move(params)) {}

  Result<ProposalId> submit_proposal(ProposalContent content, Height height);
  /// A later vote by the same voter replaces the earlier one.
  Status vote(std::string_view voter, ProposalId id, VoteOption option, Height height);
  /// Weights each voter by bonded stake at call time and decides the
  /// proposal. StillInVoting before voting_end_height.
  Result<TallyResult> tally(ProposalId id, const Staking& staking, Height height);
  Status mark_applied(ProposalId id);

  /// Ids of proposals still voting whose period ends at or before `height`.
  std::vector<ProposalId> due_for_tally(Height height) const;

  const Proposal* find(ProposalId id) const;
  const std::map<ProposalId, Proposal>& proposals() const { return proposals_; }
  const std::map<std::string, VoteOption, std::less<>>* votes_for(ProposalId id) const;
  const TallyParams& params() const { return params_; }

  friend bool operator==(const Governance&, const Governance&) = default;

 private:
  TallyParams params_;
  ProposalId next_id_ = 1;
  std::map<ProposalId, Proposal> proposals_;
  std::map<ProposalId, std::map<std::string, VoteOption, std::less<>>> votes_;
};

}  // namespace lunc
