#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "lunc/error.hpp"
#include "lunc/simulator.hpp"

namespace lunc {

/// Largest integer a double represents exactly (2^53 - 1).
inline constexpr Amount kJsonSafeInteger = (Amount{1} << 53) - 1;

/// One row per produced block (halted attempts included, flagged). Columns:
/// height, halted, compatible_power_fraction, proposer, txs, failed_txs,
/// then supply_, burned_ and community_pool_ per denom in `denoms` order.
void write_block_csv(std::ostream& out, const RunReport& report, const std::vector<std::string>& denoms);

/// Summary as pretty-printed JSON. Amounts above kJsonSafeInteger are
/// emitted as strings.
std::string summary_json(const RunReport& report, const std::vector<std::string>& denoms);

/// Writes blocks.csv and summary.json into `dir`, creating it if needed.
Status write_reports(const std::filesystem::path& dir, const RunReport& report,
                     const std::vector<std::string>& denoms);

}  // namespace lunc
