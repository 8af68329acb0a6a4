#include "lunc/ante.hpp"

#include <algorithm>

namespace lunc {

Amount TaxComputationParams::cap_for(std::string_view denom) const {
  auto it = tax_caps.find(denom);
  return it == tax_caps.end() ? default_tax_cap : it->second;
}

TaxComputationParams tax_params(const Treasury& treasury, const AnteConfig& config) {
  return TaxComputationParams{.tax_rate = treasury.tax_rate(),
                              .tax_caps = treasury.tax_caps(),
                              .default_tax_cap = treasury.default_tax_cap(),
                              .exempt_denoms = config.exempt_denoms,
                              .tax_power_upgrade_height = config.tax_power_upgrade_height};
}

Coins compute_tax(const Coins& principal, const TaxComputationParams& params) {
  Coins taxes;
  if (params.tax_rate.is_zero()) return taxes;
  for (const auto& [denom, amount] : principal) {
    if (params.exempt_denoms.contains(denom)) continue;
    const Amount tax = params.tax_rate.floor_mul(amount);
    taxes.add(denom, std::min(tax, params.cap_for(denom)));
  }
  return taxes;
}

Coins filter_msgs_and_compute_tax(std::span<const Msg> msgs, const TaxComputationParams& params) {
  std::vector<Coins> principals;
  for (const auto& m : msgs) collect_taxable_principals(m, principals);
  Coins taxes;
  for (const auto& p : principals) taxes.add(compute_tax(p, params));
  return taxes;
}

Coins required_gas_fee(std::uint64_t gas_limit, const AnteConfig& config) {
  return Coins(Coin{config.fee_denom, config.gas_price.ceil_mul(gas_limit)});
}

Result<Coins> burn_tax_decorator(Ledger& ledger, Treasury& treasury, const Tx& tx, Height height,
                                 const TaxComputationParams& params, const Coins& first_pass) {
  if (height < params.tax_power_upgrade_height) return Coins{};

  // Computed a second time on purpose; both passes must agree.
  Coins taxes = filter_msgs_and_compute_tax(tx.msgs, params);
  if (taxes != first_pass) {
    return error(Errc::kInternalInconsistency,
                 "tax recomputation " + taxes.to_string() + " != " + first_pass.to_string());
  }
  if (taxes.is_zero()) return taxes;

  if (auto st = ledger.send_module_to_module(module::kFeeCollector, module::kBurnModule, taxes);
      !st) {
    return error(Errc::kInsufficientFunds, st.message());
  }
  if (auto st = ledger.burn(module::kBurnModule, taxes); !st) return st;
  treasury.record_epoch_burn(taxes);
  return taxes;
}

Result<AnteReceipt> run_ante_pipeline(Ledger& ledger, Treasury& treasury, const Tx& tx,
                                      Height height, const AnteConfig& config, bool simulate) {
  if (tx.msgs.empty()) return error(Errc::kInvalidTx, "transaction has no messages");
  if (tx.fee_payer.empty()) return error(Errc::kInvalidTx, "transaction has no fee payer");

  const TaxComputationParams params = tax_params(treasury, config);
  AnteReceipt receipt;
  receipt.tax = filter_msgs_and_compute_tax(tx.msgs, params);

  Coins required = required_gas_fee(tx.gas_limit, config);
  if (!simulate) required.add(receipt.tax);
  if (auto short_denom = tx.declared_fee.first_shortfall(required)) {
    return error(Errc::kInsufficientFunds,
                 "insufficient fee: got " + tx.declared_fee.to_string() + ", required " +
                     required.to_string());
  }

  Ledger staged_ledger = ledger;
  Treasury staged_treasury = treasury;
  if (auto st = staged_ledger.send_account_to_module(tx.fee_payer, module::kFeeCollector,
                                                     tx.declared_fee);
      !st) {
    return st;
  }
  receipt.fee_paid = tx.declared_fee;

  if (!simulate) {
    auto burned =
        burn_tax_decorator(staged_ledger, staged_treasury, tx, height, params, receipt.tax);
    if (!burned) return burned.status();
    receipt.tax_burned = std::move(burned).value();
  }

  ledger = std::move(staged_ledger);
  treasury = std::move(staged_treasury);
  return receipt;
}

}  // namespace lunc
