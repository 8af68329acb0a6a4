#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lunc/ante.hpp"
#include "lunc/chain_state.hpp"
#include "lunc/distribution.hpp"
#include "lunc/msgs.hpp"
#include "lunc/treasury.hpp"

namespace lunc {

struct TxResult {
  /// Admission outcome; a rejected tx changed nothing.
  Status ante;
  /// Message execution outcome. On failure the messages are rolled back but
  /// the fee (and burned tax) stays spent.
  Status exec;
  AnteReceipt receipt;

  bool admitted() const { return ante.is_ok(); }
  bool succeeded() const { return ante.is_ok() && exec.is_ok(); }
  /// Error code that decided the result, kOk on success.
  Errc code() const { return !ante.is_ok() ? ante.code() : exec.code(); }

  friend bool operator==(const TxResult& a, const TxResult& b) {
    return a.ante == b.ante && a.exec == b.exec;
  }
};

Status execute_msg(ChainState& state, const Msg& msg, const ProtocolRules& rules, Height height);

/// Ante pipeline followed by atomic execution of all messages.
TxResult deliver_tx(ChainState& state, const Tx& tx, const ProtocolRules& rules, Height height,
                    bool simulate = false);

struct TallyRecord {
  ProposalId id = 0;
  Height height = 0;
  bool passed = false;
  TallyResult tally;
};

struct AppliedProposal {
  ProposalId id = 0;
  Height height = 0;
  Status status;
};

struct BeginBlockReport {
  std::string proposer;
  std::vector<AppliedProposal> applied;
};

struct EndBlockReport {
  FeeAllocation fees;
  std::vector<UnbondingEntry> matured;
  std::vector<TallyRecord> tallies;
  std::optional<SeigniorageReport> seigniorage;
};

/// Advances the weighted round-robin proposer schedule one step and
/// returns the chosen active validator, or empty when none has power.
std::string select_proposer(ChainState& state);

/// Applies passed proposals queued by the previous block, then picks the
/// block proposer.
BeginBlockReport begin_block(ChainState& state, Height height);

/// Fee allocation, unbonding maturation, proposal tallies and, on an epoch
/// boundary, the treasury transition. Sets state.height = height.
Result<EndBlockReport> end_block(ChainState& state, Height height, const std::string& proposer,
                                 const Ratio& precommit_power_fraction);

}  // namespace lunc
