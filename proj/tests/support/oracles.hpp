#pragma once

// Reference computations used to check the simulator. They work on plain
// cpp_int numerators and denominators and never call into lunc::Ratio.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "lunc/amount.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_int;

struct Fraction {
  Big num;
  Big den{1};
};

/// Digit-by-digit parse of "0.012", "1", "1.0" or "a/b".
Fraction parse(std::string_view text);

Big big(lunc::Amount v);
lunc::Amount amount(const Big& v);

/// floor(f * value), by repeated long division.
Big floor_times(const Fraction& f, const Big& value);
Big ceil_times(const Fraction& f, const Big& value);

/// Exact comparison of a/b and c/d by continued-fraction expansion.
/// Returns -1, 0 or 1.
int compare(Big a, Big b, Big c, Big d);

/// min(floor(rate * amount), cap), zero when exempt.
lunc::Amount tax(lunc::Amount principal, const Fraction& rate, lunc::Amount cap, bool exempt);

/// Accept iff (v + d) / (t + d) <= cap, with d = delta / reduction.
bool power_cap_accepts(lunc::Amount v, lunc::Amount t, lunc::Amount delta, lunc::Amount reduction,
                       const Fraction& cap);

/// Block fee split: proposer, community, per-validator shares and dust.
struct FeeSplit {
  Big proposer;
  Big community;
  std::vector<Big> validators;
  Big dust;
};
FeeSplit split_fees(const Big& fees, const Fraction& community_tax, const Fraction& base,
                    const Fraction& bonus, const Fraction& precommit, const std::vector<Big>& powers);

/// Epoch seigniorage: minted, burned, distributed.
struct Seigniorage {
  Big minted;
  Big burned;
  Big distributed;
};
Seigniorage seigniorage(const Big& epoch_burned, const Fraction& reward_weight);

/// floor(blocks_per_minute * 60 * 24 * days).
long long blocks_for_days(long long days, const Fraction& blocks_per_minute);

}  // namespace oracle
