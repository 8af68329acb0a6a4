#include "lunc/simulator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lunc {

bool version_behavior(SoftwareVersion version, const Msg& msg, Height height, const ChainState& state) {
  ChainState scratch = state;
  return execute_msg(scratch, msg, rules_for(version), height).is_ok();
}

Status upgrade_validator(ChainState& state, std::string_view validator, SoftwareVersion version) {
  return state.staking.set_version(validator, version);
}

namespace {

struct Branch {
  ChainState state;
  std::vector<TxResult> results;
  ConsensusPower power = 0;
};

}  // namespace

Result<BlockResult> produce_block(ChainState& state, Height height, const std::vector<Tx>& txs,
                                  const std::optional<Ratio>& precommit_override) {
  if (height != state.height + 1) {
    return error(Errc::kInternalInconsistency, "block " + std::to_string(height) +
                                                   " does not follow " + std::to_string(state.height));
  }

  std::map<SoftwareVersion, ConsensusPower> class_power;
  ConsensusPower total = 0;
  for (const auto& [address, v] : state.staking.validators()) {
    const ConsensusPower p = state.staking.validator_power(address);
    if (p == 0) continue;
    class_power[v.version] += p;
    total += p;
  }

  BlockResult block;
  block.height = height;
  const bool divergence_possible = !txs.empty() && class_power.size() > 1;

  // Without divergence the block always commits, so work in place.
  ChainState staged;
  ChainState& next = divergence_possible ? (staged = state) : state;

  block.begin = begin_block(next, height);
  block.proposer = block.begin.proposer;

  if (!divergence_possible) {
    const ProtocolRules rules =
        rules_for(class_power.empty() ? SoftwareVersion::kV21 : class_power.begin()->first);
    for (const auto& tx : txs) block.tx_results.push_back(deliver_tx(next, tx, rules, height));
  } else {
    std::vector<Branch> branches;
    for (const auto& [version, power] : class_power) {
      Branch b{.state = next, .results = {}, .power = power};
      for (const auto& tx : txs) b.results.push_back(deliver_tx(b.state, tx, rules_for(version), height));
      auto same = std::find_if(branches.begin(), branches.end(), [&](const Branch& o) {
        return o.results == b.results && o.state == b.state;
      });
      if (same != branches.end()) {
        same->power += power;
      } else {
        branches.push_back(std::move(b));
      }
    }
    auto best = std::max_element(branches.begin(), branches.end(),
                                 [](const Branch& a, const Branch& b) { return a.power < b.power; });
    block.outcome.compatible_power_fraction = Ratio(to_bigint(best->power), to_bigint(total));
    if (to_bigint(best->power) * 3 < to_bigint(total) * 2) {
      block.outcome.status = ConsensusStatus::kHalted;
      block.outcome.halt_height = height;
      return block;
    }
    next = std::move(best->state);
    block.tx_results = std::move(best->results);
  }

  block.precommit_power_fraction =
      precommit_override ? *precommit_override
                         : max(Ratio(2, 3), min(Ratio(1), block.outcome.compatible_power_fraction));
  auto end = end_block(next, height, block.proposer, block.precommit_power_fraction);
  if (!end) return end.status();
  block.end = std::move(end).value();

  if (divergence_possible) state = std::move(next);
  return block;
}

namespace {

struct PendingTx {
  Height include_at = 0;
  Tx tx;
  std::string label;
};

class Runner {
 public:
  Runner(const ChainState& genesis, const Scenario& scenario, const RunOptions& options)
      : scenario_(scenario), options_(options), state_(genesis) {
    events_.reserve(scenario.events.size());
    for (const auto& e : scenario.events) events_.push_back(&e);
    std::stable_sort(events_.begin(), events_.end(), [](const ScenarioEvent* a, const ScenarioEvent* b) {
      return a->at_height < b->at_height;
    });
    consumed_.assign(events_.size(), false);
    for (const auto* e : events_) {
      if (const auto* r = std::get_if<RollbackToEvent>(&e->action)) snapshot_heights_.insert(r->height);
    }
    report_.scenario = scenario.name;
    take_snapshot();
    last_seen_proposal_ = last_proposal_id();
  }

  RunReport run() {
    Height h = state_.height + 1;
    while (h <= scenario_.end_height) {
      precommit_override_.reset();
      rolled_back_ = false;
      pre_block(h);
      if (rolled_back_) {
        h = state_.height + 1;
        continue;
      }
      collect_block_txs(h);

      auto block = produce_block(state_, h, block_txs_, precommit_override_);
      if (!block) {
        report_.invariant = block.status();
        break;
      }
      if (block.value().outcome.status == ConsensusStatus::kHalted) {
        if (!recover(h, block)) break;
        if (rolled_back_) {
          h = state_.height + 1;
          continue;
        }
      }
      if (!commit(block.value())) break;
      post_block(h);
      ++h;
    }
    finish();
    return std::move(report_);
  }

 private:
  bool is_upgrade(const ScenarioEvent& e) const {
    return std::holds_alternative<UpgradeValidatorEvent>(e.action);
  }

  void advance_cursor() {
    while (cursor_ < events_.size() && consumed_[cursor_]) ++cursor_;
  }

  void pre_block(Height h) {
    for (std::size_t i = cursor_; i < events_.size() && events_[i]->at_height <= h; ++i) {
      if (consumed_[i]) continue;
      if (is_upgrade(*events_[i]) && events_[i]->at_height == h) continue;
      consumed_[i] = true;
      apply_event(*events_[i], h);
      if (rolled_back_) break;
    }
    advance_cursor();
  }

  void post_block(Height h) {
    for (std::size_t i = cursor_; i < events_.size() && events_[i]->at_height <= h; ++i) {
      if (consumed_[i] || !is_upgrade(*events_[i])) continue;
      consumed_[i] = true;
      apply_event(*events_[i], h);
    }
    advance_cursor();
  }

  void warn(std::string message) { report_.warnings.push_back(std::move(message)); }

  void apply_event(const ScenarioEvent& event, Height h) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, SubmitTxEvent>) {
            pending_.push_back({.include_at = h + a.delay, .tx = a.tx, .label = a.label});
          } else if constexpr (std::is_same_v<T, UpgradeValidatorEvent>) {
            if (auto st = upgrade_validator(state_, a.validator, a.version); !st) {
              warn("upgrade at " + std::to_string(h) + ": " + st.describe());
            }
          } else if constexpr (std::is_same_v<T, SubmitProposalEvent>) {
            auto id = state_.governance.submit_proposal(a.content, h);
            if (!id) warn("proposal at " + std::to_string(h) + " rejected: " + id.status().describe());
          } else if constexpr (std::is_same_v<T, CastVoteEvent>) {
            if (auto st = state_.governance.vote(a.voter, a.proposal_id, a.option, h); !st) {
              warn("vote by " + a.voter + " at " + std::to_string(h) + ": " + st.describe());
            }
          } else if constexpr (std::is_same_v<T, SniperArmEvent>) {
            snipers_.push_back(a);
          } else if constexpr (std::is_same_v<T, CommunitySpendEvent>) {
            if (auto st = state_.distribution.community_pool_spend(state_.ledger, a.target, a.amount); !st) {
              warn("community spend at " + std::to_string(h) + ": " + st.describe());
            }
          } else if constexpr (std::is_same_v<T, RollbackToEvent>) {
            rollback(a.height);
          } else if constexpr (std::is_same_v<T, SetPrecommitFractionEvent>) {
            precommit_override_ = a.fraction;
          }
        },
        event.action);
  }

  void rollback(Height target) {
    auto it = snapshots_.find(target);
    if (it == snapshots_.end() || target > state_.height) {
      warn("rollback to " + std::to_string(target) + ": no snapshot");
      return;
    }
    state_ = it->second;
    pending_.clear();
    block_txs_.clear();
    block_labels_.clear();
    snipers_.clear();
    std::erase_if(report_.blocks, [&](const BlockRecord& b) { return b.height > target; });
    rolled_back_ = true;
  }

  void collect_block_txs(Height h) {
    std::vector<SniperArmEvent> still_armed;
    for (auto& s : snipers_) {
      if (h >= s.target_height) {
        const Height delay = s.inclusion_delay.value_or(scenario_.inclusion_delay);
        pending_.push_back({.include_at = h + delay, .tx = s.tx, .label = s.label});
      } else {
        still_armed.push_back(std::move(s));
      }
    }
    snipers_ = std::move(still_armed);

    block_txs_.clear();
    block_labels_.clear();
    std::vector<PendingTx> rest;
    for (auto& p : pending_) {
      if (p.include_at <= h) {
        block_txs_.push_back(std::move(p.tx));
        block_labels_.push_back(std::move(p.label));
      } else {
        rest.push_back(std::move(p));
      }
    }
    pending_ = std::move(rest);
  }

  /// Feeds operator events into a halted chain until it commits. Returns
  /// false when the run cannot continue.
  bool recover(Height h, Result<BlockResult>& block) {
    HaltRecord halt{.height = h,
                    .compatible_power_fraction = block.value().outcome.compatible_power_fraction,
                    .resumed = false,
                    .recovery_events = 0};
    report_.blocks.push_back(record(h, true, block.value()));
    report_.halts.push_back(halt);
    if (options_.strict_halt) {
      report_.halted_at_end = true;
      return false;
    }
    while (true) {
      std::size_t i = cursor_;
      for (; i < events_.size(); ++i) {
        if (consumed_[i]) continue;
        const auto& action = events_[i]->action;
        if (std::holds_alternative<UpgradeValidatorEvent>(action) ||
            std::holds_alternative<RollbackToEvent>(action)) {
          break;
        }
      }
      if (i == events_.size()) {
        report_.halted_at_end = true;
        return false;
      }
      consumed_[i] = true;
      advance_cursor();
      ++report_.halts.back().recovery_events;
      apply_event(*events_[i], h);
      if (rolled_back_) {
        report_.halts.back().resumed = true;
        return true;
      }
      block = produce_block(state_, h, block_txs_, precommit_override_);
      if (!block) {
        report_.invariant = block.status();
        return false;
      }
      if (block.value().outcome.status == ConsensusStatus::kCommitted) {
        report_.halts.back().resumed = true;
        return true;
      }
    }
  }

  BlockRecord record(Height h, bool halted, const BlockResult& block) const {
    BlockRecord r;
    r.height = h;
    r.halted = halted;
    r.compatible_power_fraction = block.outcome.compatible_power_fraction;
    r.proposer = halted ? std::string() : block.proposer;
    r.tx_count = block_txs_.size();
    for (const auto& t : block.tx_results) r.tx_failed += t.succeeded() ? 0 : 1;
    r.supply = state_.ledger.supply().totals;
    r.cumulative_burned = state_.ledger.supply().cumulative_burned;
    r.community_pool = state_.ledger.module_balance(module::kCommunityPool);
    return r;
  }

  bool commit(const BlockResult& block) {
    const Height h = block.height;
    const Height interval = std::max<Height>(1, scenario_.report_interval);
    if (!block_txs_.empty() || h % interval == 0 || h == scenario_.end_height ||
        (!report_.halts.empty() && report_.halts.back().height == h)) {
      report_.blocks.push_back(record(h, false, block));
    }
    for (std::size_t i = 0; i < block.tx_results.size(); ++i) {
      const TxResult& t = block.tx_results[i];
      report_.txs.push_back({.height = h,
                             .label = block_labels_[i],
                             .ante = t.ante,
                             .exec = t.exec,
                             .tax = t.receipt.tax,
                             .tax_burned = t.receipt.tax_burned});
    }
    for (const auto& a : block.begin.applied) {
      report_.applied.push_back(a);
      if (!a.status) {
        warn("proposal " + std::to_string(a.id) + " failed to apply at " + std::to_string(h) + ": " +
             a.status.describe());
      }
    }
    for (const auto& t : block.end.tallies) report_.tallies.push_back(t);
    if (block.end.seigniorage) report_.seigniorage.push_back(*block.end.seigniorage);
    note_new_proposals();

    if (options_.check_invariants_every_block) {
      if (auto st = check_invariants(state_); !st) {
        report_.invariant = error(st.code(), "after block " + std::to_string(h) + ": " + st.message());
        return false;
      }
    }
    if (options_.record_hash_trajectory) report_.hash_trajectory.push_back(state_hash(state_));
    take_snapshot();
    return true;
  }

  ProposalId last_proposal_id() const {
    const auto& ps = state_.governance.proposals();
    return ps.empty() ? 0 : ps.rbegin()->first;
  }

  void note_new_proposals() {
    const auto& ps = state_.governance.proposals();
    for (auto it = ps.upper_bound(last_seen_proposal_); it != ps.end(); ++it) {
      if (it->second.lone_treasury_policy) {
        warn("proposal " + std::to_string(it->first) +
             " changes only one of TaxPolicy/RewardPolicy; both must change together");
      }
    }
    last_seen_proposal_ = std::max(last_seen_proposal_, last_proposal_id());
  }

  void take_snapshot() {
    if (snapshot_heights_.contains(state_.height)) snapshots_[state_.height] = state_;
  }

  void finish() {
    report_.final_height = state_.height;
    report_.final_hash = state_hash(state_);
    report_.final_state = std::move(state_);
  }

  const Scenario& scenario_;
  RunOptions options_;
  ChainState state_;
  RunReport report_;

  std::vector<const ScenarioEvent*> events_;
  std::vector<bool> consumed_;
  std::size_t cursor_ = 0;

  std::vector<PendingTx> pending_;
  std::vector<SniperArmEvent> snipers_;
  std::vector<Tx> block_txs_;
  std::vector<std::string> block_labels_;
  std::optional<Ratio> precommit_override_;
  bool rolled_back_ = false;

  std::set<Height> snapshot_heights_;
  std::map<Height, ChainState> snapshots_;
  ProposalId last_seen_proposal_ = 0;
};

}  // namespace

RunReport run_scenario(const ChainState& genesis, const Scenario& scenario, const RunOptions& options) {
  return Runner(genesis, scenario, options).run();
}

}  // namespace lunc
