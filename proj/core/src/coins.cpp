#include "lunc/coins.hpp"

#include <cassert>

namespace lunc {

Coins::Coins(std::initializer_list<Coin> coins) {
  for (const auto& c : coins) add(c.denom, c.amount);
}

Coins::Coins(const Coin& coin) { add(coin.denom, coin.amount); }

Amount Coins::amount_of(std::string_view denom) const {
  auto it = entries_.find(denom);
  return it == entries_.end() ? Amount{0} : it->second;
}

void Coins::add(std::string_view denom, Amount amount) {
  if (amount == 0) return;
  auto it = entries_.find(denom);
  if (it == entries_.end()) {
    entries_.emplace(std::string(denom), amount);
  } else {
    it->second = checked_add(it->second, amount);
  }
}

void Coins::add(const Coins& other) {
  for (const auto& [denom, amount] : other.entries_) add(denom, amount);
}

bool Coins::covers(const Coins& other) const { return !first_shortfall(other).has_value(); }

std::optional<std::string> Coins::first_shortfall(const Coins& other) const {
  for (const auto& [denom, amount] : other.entries_) {
    if (amount_of(denom) < amount) return denom;
  }
  return std::nullopt;
}

void Coins::subtract(const Coins& other) {
  assert(covers(other));
  for (const auto& [denom, amount] : other.entries_) subtract(denom, amount);
}

void Coins::subtract(std::string_view denom, Amount amount) {
  if (amount == 0) return;
  auto it = entries_.find(denom);
  assert(it != entries_.end() && it->second >= amount);
  it->second -= amount;
  if (it->second == 0) entries_.erase(it);
}

std::string Coins::to_string() const {
  std::string out;
  for (const auto& [denom, amount] : entries_) {
    if (!out.empty()) out += ',';
    out += lunc::to_string(amount);
    out += denom;
  }
  return out;
}

Coins operator+(Coins a, const Coins& b) {
  a.add(b);
  return a;
}

}  // namespace lunc
