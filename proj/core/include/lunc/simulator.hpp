#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lunc/app.hpp"
#include "lunc/chain_state.hpp"
#include "lunc/msgs.hpp"
#include "lunc/state_hash.hpp"

namespace lunc {

inline constexpr Height kDefaultInclusionDelay = 2;

/// A transaction entering the pending pool; included `delay` blocks later.
struct SubmitTxEvent {
  Tx tx;
  Height delay = 0;
  std::string label;
};

/// Takes effect from the block after the event height.
struct UpgradeValidatorEvent {
  std::string validator;
  SoftwareVersion version = SoftwareVersion::kV21;
};

struct SubmitProposalEvent {
  ProposalContent content;
};

struct CastVoteEvent {
  std::string voter;
  ProposalId proposal_id = 0;
  VoteOption option = VoteOption::kYes;
};

/// Watches the height and submits `tx` once it reaches `target_height`.
struct SniperArmEvent {
  Height target_height = 0;
  Tx tx;
  std::optional<Height> inclusion_delay;
  std::string label;
};

/// Operator-initiated spend straight out of the community pool.
struct CommunitySpendEvent {
  SpendTarget target;
  Coins amount;
};

/// Restores the state committed at `height` and drops queued transactions.
struct RollbackToEvent {
  Height height = 0;
};

/// Overrides the precommit power fraction for the block at the event height.
struct SetPrecommitFractionEvent {
  Ratio fraction{1};
};

using ScenarioAction =
    std::variant<SubmitTxEvent, UpgradeValidatorEvent, SubmitProposalEvent, CastVoteEvent, SniperArmEvent,
                 CommunitySpendEvent, RollbackToEvent, SetPrecommitFractionEvent>;

struct ScenarioEvent {
  Height at_height = 0;
  ScenarioAction action;
};

struct Scenario {
  std::string name;
  /// Last block to produce.
  Height end_height = 0;
  Height inclusion_delay = kDefaultInclusionDelay;
  /// Empty blocks are reported only at multiples of this interval; blocks
  /// with transactions, halts and the last block are always reported.
  Height report_interval = 1;
  std::vector<ScenarioEvent> events;
};

struct RunOptions {
  /// Treat a halt as terminal.
  bool strict_halt = false;
  bool check_invariants_every_block = true;
  /// Keep the state hash of every committed block.
  bool record_hash_trajectory = false;
};

enum class ConsensusStatus { kCommitted, kHalted };

struct ConsensusOutcome {
  ConsensusStatus status = ConsensusStatus::kCommitted;
  std::optional<Height> halt_height;
  Ratio compatible_power_fraction{1};
};

struct BlockResult {
  Height height = 0;
  ConsensusOutcome outcome;
  std::string proposer;
  Ratio precommit_power_fraction{1};
  std::vector<TxResult> tx_results;
  BeginBlockReport begin;
  EndBlockReport end;
};

/// Whether `version` accepts `msg` against `state` at `height`. Only the
/// staking gates and the power cap differ between versions.
bool version_behavior(SoftwareVersion version, const Msg& msg, Height height, const ChainState& state);

/// Sets the validator's software version; the simulator consults versions
/// at block production, so the change binds from the next block.
Status upgrade_validator(ChainState& state, std::string_view validator, SoftwareVersion version);

/// Produces block `height` (must be state.height + 1). When active
/// validators run different versions and the transactions diverge, the
/// block commits only if one agreeing class holds at least 2/3 of the
/// power; otherwise `state` is left untouched and the outcome is halted.
Result<BlockResult> produce_block(ChainState& state, Height height, const std::vector<Tx>& txs,
                                  const std::optional<Ratio>& precommit_override = std::nullopt);

struct BlockRecord {
  Height height = 0;
  bool halted = false;
  Ratio compatible_power_fraction{1};
  std::string proposer;
  std::size_t tx_count = 0;
  std::size_t tx_failed = 0;
  Coins supply;
  Coins cumulative_burned;
  Coins community_pool;
};

struct HaltRecord {
  Height height = 0;
  Ratio compatible_power_fraction{0};
  bool resumed = false;
  /// Operator events consumed before the block committed.
  std::size_t recovery_events = 0;
};

struct TxRecord {
  Height height = 0;
  std::string label;
  Status ante;
  Status exec;
  Coins tax;
  Coins tax_burned;
};

struct RunReport {
  std::string scenario;
  std::vector<BlockRecord> blocks;
  std::vector<HaltRecord> halts;
  std::vector<TxRecord> txs;
  std::vector<TallyRecord> tallies;
  std::vector<AppliedProposal> applied;
  std::vector<SeigniorageReport> seigniorage;
  std::vector<std::string> warnings;
  std::vector<Digest> hash_trajectory;
  bool halted_at_end = false;
  /// First invariant violation, if any; the run stops there.
  Status invariant;
  Height final_height = 0;
  Digest final_hash{};
  ChainState final_state;
};

/// Runs the scenario from `genesis` up to scenario.end_height. Events are
/// processed in height order, ties in declaration order.
RunReport run_scenario(const ChainState& genesis, const Scenario& scenario, const RunOptions& options = {});

}  // namespace lunc
