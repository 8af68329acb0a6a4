#pragma once

#include "lunc/amount.hpp"
#include "lunc/ratio.hpp"

namespace lunc {

inline constexpr std::int64_t kBlockSeconds = 7;

/// Blocks per minute as the upgrade-height comments compute it: 60/7
/// truncated to 8.571.
inline Ratio approx_blocks_per_minute() { return Ratio(8571, 1000); }
/// 60/7 exactly.
inline Ratio exact_blocks_per_minute() { return Ratio(60, kBlockSeconds); }

/// floor(blocks_per_minute * 60 * 24 * days).
inline Height blocks_for_days(std::int64_t days, const Ratio& blocks_per_minute) {
  const Ratio blocks = blocks_per_minute * Ratio(60 * 24 * days);
  return static_cast<Height>(blocks.floor_mul(1));
}

/// Number of blocks in the 60-day protect window (740,534).
inline Height protect_window_blocks() { return blocks_for_days(60, approx_blocks_per_minute()); }

inline std::int64_t block_timestamp(std::int64_t genesis_time, Height genesis_height, Height height) {
  return genesis_time + kBlockSeconds * (height - genesis_height);
}

}  // namespace lunc
