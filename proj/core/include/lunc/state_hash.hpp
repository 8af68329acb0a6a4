#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lunc/chain_state.hpp"

namespace lunc {

using Digest = std::array<std::uint8_t, 32>;

/// Canonical byte encoding of the state: maps in key order, integers as
/// fixed-width big-endian, strings and ratios length-prefixed.
std::vector<std::uint8_t> canonical_bytes(const ChainState& state);

/// SHA-256 of canonical_bytes.
Digest state_hash(const ChainState& state);

std::string to_hex(const Digest& digest);

}  // namespace lunc
