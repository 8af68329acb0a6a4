#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "lunc/coins.hpp"
#include "lunc/error.hpp"
#include "lunc/ledger.hpp"
#include "lunc/msgs.hpp"
#include "lunc/ratio.hpp"
#include "lunc/treasury.hpp"

namespace lunc {

/// Chain-level ante configuration; the tax rate and caps come from the
/// treasury at the time of the call.
struct AnteConfig {
  /// The SDK default bond denom, skipped by the tax filter. uluna is taxed.
  std::set<std::string, std::less<>> exempt_denoms{"stake"};
  /// The burn-tax decorator does nothing below this height.
  Height tax_power_upgrade_height = 0;
  /// Flat price per unit of gas limit, charged in fee_denom.
  Ratio gas_price{15, 100};
  std::string fee_denom{kNativeDenom};

  friend bool operator==(const AnteConfig&, const AnteConfig&) = default;
};

struct TaxComputationParams {
  Ratio tax_rate{0};
  std::map<std::string, Amount, std::less<>> tax_caps;
  Amount default_tax_cap = kDefaultTaxCap;
  std::set<std::string, std::less<>> exempt_denoms;
  Height tax_power_upgrade_height = 0;

  Amount cap_for(std::string_view denom) const;
};

TaxComputationParams tax_params(const Treasury& treasury, const AnteConfig& config);

/// Per denom: 0 when exempt, else min(floor(rate * amount), cap[denom]).
Coins compute_tax(const Coins& principal, const TaxComputationParams& params);

/// Sum of compute_tax over every taxable principal in `msgs`.
Coins filter_msgs_and_compute_tax(std::span<const Msg> msgs, const TaxComputationParams& params);

/// ceil(gas_price * gas_limit) in the fee denom.
Coins required_gas_fee(std::uint64_t gas_limit, const AnteConfig& config);

struct AnteReceipt {
  Coins fee_paid;
  /// Tax the fee had to cover.
  Coins tax;
  /// Tax actually burned (zero when simulating or below the upgrade height).
  Coins tax_burned;
};

/// Moves computed taxes FeeCollector -> BurnModule, burns them and records
/// the burn with the treasury. `first_pass` is the tax the fee check
/// computed; a disagreement aborts with InternalInconsistency.
Result<Coins> burn_tax_decorator(Ledger& ledger, Treasury& treasury, const Tx& tx, Height height,
                                 const TaxComputationParams& params, const Coins& first_pass);

/// validate -> fee check and deduction into the fee collector -> burn tax
/// (skipped when `simulate`). All or nothing: on rejection neither ledger
/// nor treasury is touched.
Result<AnteReceipt> run_ante_pipeline(Ledger& ledger, Treasury& treasury, const Tx& tx,
                                      Height height, const AnteConfig& config, bool simulate);

}  // namespace lunc
