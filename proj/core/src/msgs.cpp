#include "lunc/msgs.hpp"

namespace lunc {

std::string_view to_string(MsgKind kind) {
  switch (kind) {
    case MsgKind::kSend: return "send";
    case MsgKind::kMultiSend: return "multi-send";
    case MsgKind::kSwapSend: return "swap-send";
    case MsgKind::kInstantiateContract: return "instantiate-contract";
    case MsgKind::kExecuteContract: return "execute-contract";
    case MsgKind::kExec: return "exec";
    case MsgKind::kDelegate: return "delegate";
    case MsgKind::kUndelegate: return "undelegate";
    case MsgKind::kCreateValidator: return "create-validator";
    case MsgKind::kVote: return "vote";
    case MsgKind::kSubmitProposal: return "submit-proposal";
    case MsgKind::kWithdrawRewards: return "withdraw-rewards";
  }
  return "unknown";
}

MsgKind Msg::kind() const { return static_cast<MsgKind>(body.index()); }

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

void collect_taxable_principals(const Msg& msg, std::vector<Coins>& out) {
  std::visit(Overloaded{
                 [&](const SendMsg& m) { out.push_back(m.amount); },
                 [&](const MultiSendMsg& m) {
                   for (const auto& o : m.outputs) out.push_back(o.coins);
                 },
                 [&](const SwapSendMsg& m) { out.push_back(Coins(m.offer)); },
                 [&](const InstantiateContractMsg& m) { out.push_back(m.funds); },
                 [&](const ExecuteContractMsg& m) { out.push_back(m.funds); },
                 [&](const ExecMsg& m) {
                   for (const auto& inner : m.msgs) collect_taxable_principals(inner, out);
                 },
                 [](const auto&) {},
             },
             msg.body);
}

}  // namespace lunc
