#include "lunc/ratio.hpp"

#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace lunc {

namespace mp = boost::multiprecision;

BigInt to_bigint(Amount value) {
  BigInt hi = static_cast<std::uint64_t>(value >> 64);
  BigInt lo = static_cast<std::uint64_t>(value);
  return (hi << 64) | lo;
}

Amount to_amount(const BigInt& value) {
  if (value < 0) throw AmountOverflow("negative value cannot be an amount");
  if (mp::msb(value | 1) >= 128) throw AmountOverflow("value exceeds 128 bits");
  const BigInt mask = (BigInt{1} << 64) - 1;
  const auto lo = static_cast<std::uint64_t>(value & mask);
  const auto hi = static_cast<std::uint64_t>(value >> 64);
  return (static_cast<Amount>(hi) << 64) | lo;
}

Ratio::Ratio(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  normalize();
}

Ratio::Ratio(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

Ratio Ratio::from_amount(Amount value) { return Ratio(to_bigint(value), BigInt{1}); }

void Ratio::normalize() {
  if (den_ == 0) throw std::domain_error("ratio with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(mp::abs(num_), den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::optional<Ratio> Ratio::try_parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  // cpp_int reads a leading 0 as an octal prefix.
  const auto decimal = [](std::string_view s) {
    const auto first = s.find_first_not_of('0');
    return first == std::string_view::npos ? BigInt{0} : BigInt(std::string(s.substr(first)));
  };
  const auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };

  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }

  BigInt num;
  BigInt den{1};
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto lhs = text.substr(0, slash);
    const auto rhs = text.substr(slash + 1);
    if (!digits_only(lhs) || !digits_only(rhs)) return std::nullopt;
    num = decimal(lhs);
    den = decimal(rhs);
    if (den == 0) return std::nullopt;
  } else {
    const auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (!digits_only(whole)) return std::nullopt;
    if (dot != std::string_view::npos && !digits_only(frac)) return std::nullopt;
    std::string joined(whole);
    joined.append(frac);
    num = decimal(joined);
    den = mp::pow(BigInt{10}, static_cast<unsigned>(frac.size()));
  }
  if (negative) num = -num;
  return Ratio(std::move(num), std::move(den));
}

Ratio Ratio::parse(std::string_view text) {
  auto r = try_parse(text);
  if (!r) throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
  return *r;
}

Amount Ratio::floor_mul(Amount value) const {
  if (num_ < 0) throw std::domain_error("floor_mul on negative ratio");
  return to_amount((num_ * to_bigint(value)) / den_);
}

Amount Ratio::ceil_mul(Amount value) const {
  if (num_ < 0) throw std::domain_error("ceil_mul on negative ratio");
  BigInt product = num_ * to_bigint(value);
  return to_amount((product + den_ - 1) / den_);
}

std::string Ratio::to_decimal(int digits) const {
  const BigInt scale = mp::pow(BigInt{10}, static_cast<unsigned>(digits));
  const BigInt scaled = (mp::abs(num_) * scale) / den_;
  std::string body = scaled.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (num_ < 0 && scaled != 0) body.insert(0, "-");
  return body;
}

std::string Ratio::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

double Ratio::to_double() const {
  return static_cast<double>(mp::cpp_rational(num_, den_));
}

Ratio Ratio::abs() const { return Ratio(mp::abs(num_), den_); }

Ratio operator+(const Ratio& a, const Ratio& b) {
  return Ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Ratio operator-(const Ratio& a, const Ratio& b) {
  return Ratio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Ratio operator*(const Ratio& a, const Ratio& b) {
  return Ratio(a.num_ * b.num_, a.den_ * b.den_);
}

Ratio operator/(const Ratio& a, const Ratio& b) {
  if (b.num_ == 0) throw std::domain_error("ratio division by zero");
  return Ratio(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace lunc
