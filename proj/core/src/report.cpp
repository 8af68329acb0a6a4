#include "lunc/report.hpp"

#include <fstream>

#include "json.hpp"

namespace lunc {

namespace {

using json = nlohmann::ordered_json;

json amount_json(Amount a) {
  if (a <= kJsonSafeInteger) return static_cast<std::uint64_t>(a);
  return to_string(a);
}

json coins_json(const Coins& coins) {
  json out = json::object();
  for (const auto& [denom, amount] : coins) out[denom] = amount_json(amount);
  return out;
}

json status_json(const Status& st) {
  json out = json::object();
  out["code"] = std::string(to_string(st.code()));
  if (!st.message().empty()) out["message"] = st.message();
  return out;
}

}  // namespace

void write_block_csv(std::ostream& out, const RunReport& report, const std::vector<std::string>& denoms) {
  out << "height,halted,compatible_power_fraction,proposer,txs,failed_txs";
  for (const char* prefix : {"supply_", "burned_", "community_pool_"}) {
    for (const auto& d : denoms) out << ',' << prefix << d;
  }
  out << '\n';
  for (const auto& b : report.blocks) {
    out << b.height << ',' << (b.halted ? 1 : 0) << ',' << b.compatible_power_fraction.to_string() << ','
        << b.proposer << ',' << b.tx_count << ',' << b.tx_failed;
    for (const Coins* c : {&b.supply, &b.cumulative_burned, &b.community_pool}) {
      for (const auto& d : denoms) out << ',' << to_string(c->amount_of(d));
    }
    out << '\n';
  }
}

std::string summary_json(const RunReport& report, const std::vector<std::string>& denoms) {
  json j;
  j["scenario"] = report.scenario;
  j["final_height"] = report.final_height;
  j["final_state_hash"] = to_hex(report.final_hash);
  j["blocks_recorded"] = report.blocks.size();
  j["halted_at_end"] = report.halted_at_end;
  j["invariants"] = status_json(report.invariant);

  json halts = json::array();
  for (const auto& h : report.halts) {
    halts.push_back({{"height", h.height},
                     {"compatible_power_fraction", h.compatible_power_fraction.to_string()},
                     {"resumed", h.resumed},
                     {"recovery_events", h.recovery_events}});
  }
  j["halts"] = std::move(halts);

  json tallies = json::array();
  for (const auto& t : report.tallies) {
    tallies.push_back({{"proposal_id", t.id},
                       {"height", t.height},
                       {"passed", t.passed},
                       {"yes", amount_json(t.tally.yes)},
                       {"no", amount_json(t.tally.no)},
                       {"no_with_veto", amount_json(t.tally.no_with_veto)},
                       {"abstain", amount_json(t.tally.abstain)},
                       {"total_bonded", amount_json(t.tally.total_bonded)}});
  }
  j["tallies"] = std::move(tallies);

  json applied = json::array();
  for (const auto& a : report.applied) {
    applied.push_back({{"proposal_id", a.id}, {"height", a.height}, {"status", status_json(a.status)}});
  }
  j["applied_proposals"] = std::move(applied);

  json epochs = json::array();
  for (const auto& s : report.seigniorage) {
    epochs.push_back({{"minted", coins_json(s.minted)},
                      {"burned", coins_json(s.burned)},
                      {"distributed", coins_json(s.distributed)},
                      {"tax_rate", s.tax_rate.to_decimal()},
                      {"reward_weight", s.reward_weight.to_decimal()}});
  }
  j["epochs"] = std::move(epochs);

  json txs = json::array();
  for (const auto& t : report.txs) {
    json row = {{"height", t.height}, {"label", t.label}, {"ante", status_json(t.ante)},
                {"exec", status_json(t.exec)}, {"tax", coins_json(t.tax)},
                {"tax_burned", coins_json(t.tax_burned)}};
    txs.push_back(std::move(row));
  }
  j["txs"] = std::move(txs);
  j["warnings"] = report.warnings;

  const Ledger& ledger = report.final_state.ledger;
  json supply = json::object();
  json burned = json::object();
  json pool = json::object();
  for (const auto& d : denoms) {
    supply[d] = amount_json(ledger.total_supply(d));
    burned[d] = amount_json(ledger.supply().cumulative_burned.amount_of(d));
    pool[d] = amount_json(ledger.module_balance(module::kCommunityPool).amount_of(d));
  }
  j["final_supply"] = std::move(supply);
  j["cumulative_burned"] = std::move(burned);
  j["community_pool"] = std::move(pool);
  j["tax_rate"] = report.final_state.treasury.tax_rate().to_decimal();
  j["reward_weight"] = report.final_state.treasury.reward_weight().to_decimal();
  return j.dump(2) + "\n";
}

Status write_reports(const std::filesystem::path& dir, const RunReport& report,
                     const std::vector<std::string>& denoms) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return error(Errc::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  {
    std::ofstream csv(dir / "blocks.csv", std::ios::binary);
    if (!csv) return error(Errc::kIoError, "cannot write " + (dir / "blocks.csv").string());
    write_block_csv(csv, report, denoms);
  }
  std::ofstream summary(dir / "summary.json", std::ios::binary);
  if (!summary) return error(Errc::kIoError, "cannot write " + (dir / "summary.json").string());
  summary << summary_json(report, denoms);
  return Status::ok();
}

}  // namespace lunc
