#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lunc/ante.hpp"
#include "lunc/distribution.hpp"
#include "lunc/governance.hpp"
#include "lunc/ledger.hpp"
#include "lunc/staking.hpp"
#include "lunc/treasury.hpp"

namespace lunc {

/// IBC transfer flags; stored, never consulted.
struct TransferParams {
  bool send_enabled = false;
  bool receive_enabled = false;

  friend bool operator==(const TransferParams&, const TransferParams&) = default;
};

struct ChainConfig {
  std::string chain_id{"lunc-sim"};
  Height genesis_height = 0;
  std::int64_t genesis_time = 0;
  std::vector<std::string> denoms{std::string(kNativeDenom), std::string(kStableDenom),
                                  std::string(kTaxCapReferenceDenom)};
  AnteConfig ante;

  friend bool operator==(const ChainConfig&, const ChainConfig&) = default;
};

__extension__ typedef __int128 ProposerPriority;

/// The complete deterministic world state. A plain value: copy it to
/// snapshot, compare or hash it to check determinism.
struct ChainState {
  ChainConfig config;
  /// Height of the last committed block.
  Height height = 0;
  Ledger ledger;
  Staking staking;
  Treasury treasury;
  Distribution distribution;
  Governance governance;
  TransferParams transfer;
  /// Passed proposals waiting for the next block to apply.
  std::vector<ProposalId> pending_proposals;
  std::map<std::string, ProposerPriority, std::less<>> proposer_priority;

  friend bool operator==(const ChainState&, const ChainState&) = default;
};

/// Ledger supply identities, staking share identity and pool balances, and
/// the distribution account balance, in that order.
Status check_invariants(const ChainState& state);

/// Applies a passed proposal. Distribution, staking and transfer changes
/// bind immediately; treasury policies are queued for the next epoch
/// boundary; text proposals change nothing. NotPassed otherwise.
Status apply_param_change(ChainState& state, ProposalId id);

}  // namespace lunc
