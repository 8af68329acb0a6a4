#include "lunc/app.hpp"

#include <variant>

namespace lunc {

namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

Status send_funds(ChainState& state, const std::string& from, const std::string& to, const Coins& coins) {
  if (coins.is_zero()) return error(Errc::kInvalidTx, "empty amount");
  return state.ledger.transfer(from, to, coins);
}

}  // namespace

Status execute_msg(ChainState& state, const Msg& msg, const ProtocolRules& rules, Height height) {
  return std::visit(
      Overloaded{
          [&](const SendMsg& m) { return send_funds(state, m.from, m.to, m.amount); },
          [&](const MultiSendMsg& m) {
            std::vector<std::pair<std::string, Coins>> inputs;
            std::vector<std::pair<std::string, Coins>> outputs;
            for (const auto& e : m.inputs) inputs.emplace_back(e.address, e.coins);
            for (const auto& e : m.outputs) outputs.emplace_back(e.address, e.coins);
            if (inputs.empty() || outputs.empty()) {
              return error(Errc::kInvalidTx, "multi-send needs inputs and outputs");
            }
            return state.ledger.input_output(inputs, outputs);
          },
          [&](const SwapSendMsg&) {
            return error(Errc::kMsgNotSupported, "market swaps are disabled");
          },
          [&](const InstantiateContractMsg& m) {
            if (m.funds.is_zero()) return Status::ok();
            return state.ledger.transfer(m.sender, m.contract, m.funds);
          },
          [&](const ExecuteContractMsg& m) {
            if (m.funds.is_zero()) return Status::ok();
            return state.ledger.transfer(m.sender, m.contract, m.funds);
          },
          [&](const ExecMsg& m) {
            for (const auto& inner : m.msgs) {
              if (auto st = execute_msg(state, inner, rules, height); !st) return st;
            }
            return Status::ok();
          },
          [&](const DelegateMsg& m) {
            return state.staking.delegate(state.ledger, m.delegator, m.validator, m.amount, height, rules);
          },
          [&](const UndelegateMsg& m) {
            return state.staking.undelegate(state.ledger, m.delegator, m.validator, m.amount, height)
                .status();
          },
          [&](const CreateValidatorMsg& m) {
            return state.staking.create_validator({m.operator_address, m.version}, height, rules);
          },
          [&](const VoteMsg& m) { return state.governance.vote(m.voter, m.proposal_id, m.option, height); },
          [&](const SubmitProposalMsg& m) {
            return state.governance.submit_proposal(m.content, height).status();
          },
          [&](const WithdrawRewardsMsg& m) {
            return state.distribution.withdraw_rewards(state.ledger, state.staking, m.delegator, m.validator)
                .status();
          },
      },
      msg.body);
}

TxResult deliver_tx(ChainState& state, const Tx& tx, const ProtocolRules& rules, Height height,
                    bool simulate) {
  TxResult result;
  ChainState scratch;
  ChainState& target = simulate ? (scratch = state) : state;

  auto ante = run_ante_pipeline(target.ledger, target.treasury, tx, height, target.config.ante, simulate);
  if (!ante) {
    result.ante = ante.status();
    return result;
  }
  result.receipt = std::move(ante).value();

  ChainState staged = target;
  for (const auto& msg : tx.msgs) {
    if (auto st = execute_msg(staged, msg, rules, height); !st) {
      result.exec = st;
      return result;
    }
  }
  target = std::move(staged);
  return result;
}

std::string select_proposer(ChainState& state) {
  auto& priority = state.proposer_priority;
  std::map<std::string, ConsensusPower, std::less<>> powers;
  ProposerPriority total = 0;
  for (const auto& [address, v] : state.staking.validators()) {
    ConsensusPower p = state.staking.validator_power(address);
    if (p == 0) continue;
    powers.emplace(address, p);
    total += static_cast<ProposerPriority>(p);
  }
  std::erase_if(priority, [&](const auto& entry) { return !powers.contains(entry.first); });
  if (powers.empty()) return {};

  std::string chosen;
  ProposerPriority best = 0;
  for (const auto& [address, p] : powers) {
    ProposerPriority& prio = priority[address];
    prio += static_cast<ProposerPriority>(p);
    if (chosen.empty() || prio > best) {
      chosen = address;
      best = prio;
    }
  }
  priority[chosen] -= total;
  return chosen;
}

BeginBlockReport begin_block(ChainState& state, Height height) {
  BeginBlockReport report;
  std::vector<ProposalId> pending = std::move(state.pending_proposals);
  state.pending_proposals.clear();
  for (ProposalId id : pending) {
    report.applied.push_back({.id = id, .height = height, .status = apply_param_change(state, id)});
  }
  report.proposer = select_proposer(state);
  return report;
}

Result<EndBlockReport> end_block(ChainState& state, Height height, const std::string& proposer,
                                 const Ratio& precommit_power_fraction) {
  EndBlockReport report;
  if (!proposer.empty() && !state.ledger.module_balance(module::kFeeCollector).is_zero()) {
    auto fees = state.distribution.allocate_block_fees(state.ledger, state.staking, proposer,
                                                       precommit_power_fraction);
    if (!fees) return fees.status();
    report.fees = std::move(fees).value();
  }

  report.matured = state.staking.mature_unbondings(state.ledger, height);

  for (ProposalId id : state.governance.due_for_tally(height)) {
    auto tally = state.governance.tally(id, state.staking, height);
    if (!tally) return tally.status();
    const Proposal* p = state.governance.find(id);
    const bool passed = p->status == ProposalStatus::kPassed;
    if (passed) state.pending_proposals.push_back(id);
    report.tallies.push_back({.id = id, .height = height, .passed = passed, .tally = tally.value()});
  }

  if (state.treasury.is_epoch_boundary(height)) {
    auto seigniorage = state.treasury.epoch_transition(state.ledger);
    if (!seigniorage) return seigniorage.status();
    report.seigniorage = std::move(seigniorage).value();
  }

  state.height = height;
  return report;
}

}  // namespace lunc
