#pragma once

#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lunc/amount.hpp"

namespace lunc {

inline constexpr std::string_view kNativeDenom = "uluna";
inline constexpr std::string_view kStableDenom = "uusd";
inline constexpr std::string_view kTaxCapReferenceDenom = "usdr";

struct Coin {
  std::string denom;
  Amount amount = 0;

  friend bool operator==(const Coin&, const Coin&) = default;
};

/// A set of coins keyed by denom. Zero entries are never stored, so two
/// equal sets compare equal and hash identically.
class Coins {
 public:
  using Map = std::map<std::string, Amount, std::less<>>;

  Coins() = default;
  Coins(std::initializer_list<Coin> coins);
  explicit Coins(const Coin& coin);

  Amount amount_of(std::string_view denom) const;
  bool is_zero() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Throws AmountOverflow.
  void add(std::string_view denom, Amount amount);
  void add(const Coins& other);

  /// True when every denom of `other` is covered by this set.
  bool covers(const Coins& other) const;
  /// First denom that `other` asks for beyond this set, if any.
  std::optional<std::string> first_shortfall(const Coins& other) const;

  /// Requires covers(other).
  void subtract(const Coins& other);
  /// Requires amount_of(denom) >= amount.
  void subtract(std::string_view denom, Amount amount);

  const Map& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// "12000uluna,5uusd", the cosmos coin-string form. Empty set renders "".
  std::string to_string() const;

  friend bool operator==(const Coins&, const Coins&) = default;

 private:
  Map entries_;
};

Coins operator+(Coins a, const Coins& b);

}  // namespace lunc
