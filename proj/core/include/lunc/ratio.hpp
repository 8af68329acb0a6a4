#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "lunc/amount.hpp"

namespace lunc {

using BigInt = boost::multiprecision::cpp_int;

BigInt to_bigint(Amount value);
/// Throws AmountOverflow when the value is negative or wider than 128 bits.
Amount to_amount(const BigInt& value);

/// Exact non-floating rational number. Used for every rate, weight and
/// fraction that touches a balance: tax rate, reward weight, distribution
/// parameters, power fractions.
class Ratio {
 public:
  Ratio() = default;
  Ratio(std::int64_t numerator, std::int64_t denominator = 1);
  Ratio(BigInt numerator, BigInt denominator);

  static Ratio from_amount(Amount value);

  /// Accepts "0.012", "1", "1.0", "0.500000000000000000", "2/3", "-0.5".
  static std::optional<Ratio> try_parse(std::string_view text);
  /// Throws std::invalid_argument on malformed text.
  static Ratio parse(std::string_view text);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  /// floor(this * value). Requires this >= 0.
  Amount floor_mul(Amount value) const;
  /// ceil(this * value). Requires this >= 0.
  Amount ceil_mul(Amount value) const;

  /// Fixed-point decimal text with exactly `digits` fractional digits,
  /// truncated toward zero (the cosmos Dec wire form uses 18).
  std::string to_decimal(int digits = 18) const;
  /// Shortest exact form: "3/4", "1", "-2/5".
  std::string to_string() const;
  double to_double() const;

  Ratio abs() const;

  friend Ratio operator+(const Ratio& a, const Ratio& b);
  friend Ratio operator-(const Ratio& a, const Ratio& b);
  friend Ratio operator*(const Ratio& a, const Ratio& b);
  /// Throws std::domain_error on division by zero.
  friend Ratio operator/(const Ratio& a, const Ratio& b);

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  void normalize();

  BigInt num_{0};
  BigInt den_{1};
};

inline const Ratio& min(const Ratio& a, const Ratio& b) { return b < a ? b : a; }
inline const Ratio& max(const Ratio& a, const Ratio& b) { return a < b ? b : a; }

}  // namespace lunc
