#include "lunc/amount.hpp"

#include <algorithm>

namespace lunc {

std::string to_string(Amount value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Amount parse_amount(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty amount");
  Amount value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("invalid amount '" + std::string(text) + "'");
    }
    const auto digit = static_cast<Amount>(c - '0');
    if (value > (kMaxAmount - digit) / 10) {
      throw AmountOverflow("amount exceeds 128 bits: " + std::string(text));
    }
    value = value * 10 + digit;
  }
  return value;
}

Amount checked_add(Amount a, Amount b) {
  if (a > kMaxAmount - b) throw AmountOverflow("amount addition overflow");
  return a + b;
}

Amount checked_mul(Amount a, Amount b) {
  if (a != 0 && b > kMaxAmount / a) throw AmountOverflow("amount multiplication overflow");
  return a * b;
}

}  // namespace lunc
