#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace lunc {

enum class Errc {
  kOk = 0,
  kInsufficientFunds,
  kUnknownModule,
  kMsgNotSupported,
  kDuplicateValidator,
  kPowerCapExceeded,
  kUnknownValidator,
  kInsufficientShares,
  kUnknownDelegation,
  kInternalInconsistency,
  kUnknownProposer,
  kMalformedProposal,
  kStillInVoting,
  kNotPassed,
  kUnknownProposal,
  kNonNativeAsset,
  kInvalidTx,
  kChainHalted,
  kOverflow,
  kParseError,
  kIoError,
};

std::string_view to_string(Errc code);

/// Outcome of a state transition. Rejections are ordinary values here: a
/// chain simulator rejects transactions all the time.
class [[nodiscard]] Status {
 public:
  Status() = default;
  Status(Errc code, std::string message) : code_(code), message_(std::move(message)) {}

  static Status ok() { return {}; }

  bool is_ok() const { return code_ == Errc::kOk; }
  explicit operator bool() const { return is_ok(); }
  Errc code() const { return code_; }
  const std::string& message() const { return message_; }
  std::string describe() const;

  friend bool operator==(const Status& a, const Status& b) { return a.code_ == b.code_; }

 private:
  Errc code_ = Errc::kOk;
  std::string message_;
};

inline Status error(Errc code, std::string message = {}) { return Status(code, std::move(message)); }

template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : data_(std::move(value)) {}
  Result(Status status) : data_(std::move(status)) {}

  bool is_ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return is_ok(); }

  const T& value() const& { return std::get<T>(data_); }
  T& value() & { return std::get<T>(data_); }
  T&& value() && { return std::get<T>(std::move(data_)); }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  Status status() const { return is_ok() ? Status::ok() : std::get<Status>(data_); }
  Errc code() const { return is_ok() ? Errc::kOk : std::get<Status>(data_).code(); }

 private:
  std::variant<T, Status> data_;
};

}  // namespace lunc
