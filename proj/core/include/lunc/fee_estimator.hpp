#pragma once

#include <string>

#include "lunc/ante.hpp"
#include "lunc/ratio.hpp"

namespace lunc {

struct FeeEstimate {
  Amount amount = 0;
  std::string denom;
  Ratio tax_rate{0};
  Amount tax_cap = 0;
  /// Estimated gas fee.
  Amount gas = 0;
  Amount tax = 0;
  /// min(floor(tax_rate * amount), tax_cap) + gas; gas alone for exempt denoms.
  Amount new_fee = 0;
};

/// The client-side fee formula, evaluated on its own rather than through
/// the ante pipeline.
FeeEstimate estimate_fee(Amount amount, std::string_view denom, Amount gas, const TaxComputationParams& params);

enum class AssetKind { kNativeToken, kToken };

struct Asset {
  AssetKind kind = AssetKind::kNativeToken;
  /// Denom for native coins, contract address for tokens.
  std::string id;
  Amount amount = 0;
};

/// Amount left after the tax is taken out of `asset`. Token assets are
/// rejected with NonNativeAsset.
Result<Amount> deduct_tax(const Asset& asset, const TaxComputationParams& params);

}  // namespace lunc
