#include "lunc/error.hpp"

namespace lunc {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kOk: return "Ok";
    case Errc::kInsufficientFunds: return "InsufficientFunds";
    case Errc::kUnknownModule: return "UnknownModule";
    case Errc::kMsgNotSupported: return "MsgNotSupported";
    case Errc::kDuplicateValidator: return "DuplicateValidator";
    case Errc::kPowerCapExceeded: return "PowerCapExceeded";
    case Errc::kUnknownValidator: return "UnknownValidator";
    case Errc::kInsufficientShares: return "InsufficientShares";
    case Errc::kUnknownDelegation: return "UnknownDelegation";
    case Errc::kInternalInconsistency: return "InternalInconsistency";
    case Errc::kUnknownProposer: return "UnknownProposer";
    case Errc::kMalformedProposal: return "MalformedProposal";
    case Errc::kStillInVoting: return "StillInVoting";
    case Errc::kNotPassed: return "NotPassed";
    case Errc::kUnknownProposal: return "UnknownProposal";
    case Errc::kNonNativeAsset: return "NonNativeAsset";
    case Errc::kInvalidTx: return "InvalidTx";
    case Errc::kChainHalted: return "ChainHalted";
    case Errc::kOverflow: return "Overflow";
    case Errc::kParseError: return "ParseError";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string Status::describe() const {
  std::string out(to_string(code_));
  if (!message_.empty()) {
    out += ": ";
    out += message_;
  }
  return out;
}

}  // namespace lunc
