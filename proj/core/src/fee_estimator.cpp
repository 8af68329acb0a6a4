#include "lunc/fee_estimator.hpp"

#include <algorithm>

namespace lunc {

namespace {

Amount tax_on(Amount amount, std::string_view denom, const TaxComputationParams& params) {
  if (params.exempt_denoms.contains(denom)) return 0;
  return std::min(params.tax_rate.floor_mul(amount), params.cap_for(denom));
}

}  // namespace

FeeEstimate estimate_fee(Amount amount, std::string_view denom, Amount gas, const TaxComputationParams& params) {
  FeeEstimate e;
  e.amount = amount;
  e.denom = std::string(denom);
  e.tax_rate = params.tax_rate;
  e.tax_cap = params.cap_for(denom);
  e.gas = gas;
  e.tax = tax_on(amount, denom, params);
  e.new_fee = checked_add(e.tax, gas);
  return e;
}

Result<Amount> deduct_tax(const Asset& asset, const TaxComputationParams& params) {
  if (asset.kind != AssetKind::kNativeToken) {
    return error(Errc::kNonNativeAsset, "cannot deduct tax from token asset");
  }
  return asset.amount - tax_on(asset.amount, asset.id, params);
}

}  // namespace lunc
