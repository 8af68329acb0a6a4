#pragma once

#include <concepts>
#include <cstdint>
#include <type_traits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lunc/coins.hpp"
#include "lunc/governance.hpp"
#include "lunc/staking.hpp"

namespace lunc {

struct Msg;

struct SendMsg {
  std::string from;
  std::string to;
  Coins amount;
  friend bool operator==(const SendMsg&, const SendMsg&) = default;
};

struct MultiSendMsg {
  struct Entry {
    std::string address;
    Coins coins;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> inputs;
  std::vector<Entry> outputs;
  friend bool operator==(const MultiSendMsg&, const MultiSendMsg&) = default;
};

/// Market swap followed by a send. Taxed on the offered coin.
struct SwapSendMsg {
  std::string from;
  std::string to;
  Coin offer;
  std::string ask_denom;
  friend bool operator==(const SwapSendMsg&, const SwapSendMsg&) = default;
};

/// Contract messages carry funds only; no contract code runs.
struct InstantiateContractMsg {
  std::string sender;
  std::string contract;
  Coins funds;
  friend bool operator==(const InstantiateContractMsg&, const InstantiateContractMsg&) = default;
};

struct ExecuteContractMsg {
  std::string sender;
  std::string contract;
  Coins funds;
  friend bool operator==(const ExecuteContractMsg&, const ExecuteContractMsg&) = default;
};

/// authz exec: runs the wrapped messages.
struct ExecMsg {
  std::string grantee;
  std::vector<Msg> msgs;
  friend bool operator==(const ExecMsg&, const ExecMsg&);
};

struct DelegateMsg {
  std::string delegator;
  std::string validator;
  Coin amount;
  friend bool operator==(const DelegateMsg&, const DelegateMsg&) = default;
};

struct UndelegateMsg {
  std::string delegator;
  std::string validator;
  Coin amount;
  friend bool operator==(const UndelegateMsg&, const UndelegateMsg&) = default;
};

struct CreateValidatorMsg {
  std::string operator_address;
  SoftwareVersion version = SoftwareVersion::kV21;
  friend bool operator==(const CreateValidatorMsg&, const CreateValidatorMsg&) = default;
};

struct VoteMsg {
  std::string voter;
  ProposalId proposal_id = 0;
  VoteOption option = VoteOption::kYes;
  friend bool operator==(const VoteMsg&, const VoteMsg&) = default;
};

struct SubmitProposalMsg {
  std::string proposer;
  ProposalContent content;
  friend bool operator==(const SubmitProposalMsg&, const SubmitProposalMsg&) = default;
};

struct WithdrawRewardsMsg {
  std::string delegator;
  std::string validator;
  friend bool operator==(const WithdrawRewardsMsg&, const WithdrawRewardsMsg&) = default;
};

enum class MsgKind {
  kSend,
  kMultiSend,
  kSwapSend,
  kInstantiateContract,
  kExecuteContract,
  kExec,
  kDelegate,
  kUndelegate,
  kCreateValidator,
  kVote,
  kSubmitProposal,
  kWithdrawRewards,
};

std::string_view to_string(MsgKind kind);

struct Msg {
  using Body = std::variant<SendMsg, MultiSendMsg, SwapSendMsg, InstantiateContractMsg,
                            ExecuteContractMsg, ExecMsg, DelegateMsg, UndelegateMsg,
                            CreateValidatorMsg, VoteMsg, SubmitProposalMsg, WithdrawRewardsMsg>;
  Body body;

  template <typename T>
    requires(!std::same_as<std::remove_cvref_t<T>, Msg>)
  Msg(T&& m) : body(std::forward<T>(m)) {}

  MsgKind kind() const;

  friend bool operator==(const Msg&, const Msg&) = default;
};

inline bool operator==(const ExecMsg& a, const ExecMsg& b) {
  return a.grantee == b.grantee && a.msgs == b.msgs;
}

struct Tx {
  std::vector<Msg> msgs;
  std::string fee_payer;
  Coins declared_fee;
  std::uint64_t gas_limit = 200'000;

  friend bool operator==(const Tx&, const Tx&) = default;
};

/// Appends each principal the tax applies to: the send amount, every
/// multi-send output separately, the swap offer, contract funds, and the
/// principals of messages wrapped by Exec. Staking, governance and reward
/// messages contribute nothing.
void collect_taxable_principals(const Msg& msg, std::vector<Coins>& out);

}  // namespace lunc
