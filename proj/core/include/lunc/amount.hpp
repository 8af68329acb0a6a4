#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lunc {

/// Token quantity in micro-units (1 whole token = 1,000,000 micro-units).
/// 128 bits so multi-trillion token supplies never overflow.
__extension__ typedef unsigned __int128 Amount;

/// Block height. Signed so height arithmetic near zero stays well defined.
using Height = std::int64_t;

inline constexpr Amount kMicroPerToken = 1'000'000;
inline constexpr Amount kMaxAmount = ~Amount{0};

class AmountOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Decimal rendering, no separators.
std::string to_string(Amount value);

/// Parses a non-negative decimal integer. Throws std::invalid_argument on
/// malformed input and AmountOverflow when the value exceeds 128 bits.
Amount parse_amount(std::string_view text);

Amount checked_add(Amount a, Amount b);
Amount checked_mul(Amount a, Amount b);

constexpr Amount pow2(unsigned bits) { return Amount{1} << bits; }

}  // namespace lunc
