// lunc-sim: run scenarios against a genesis file, replay the bundled
// scenarios, and evaluate the client fee formula.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "lunc/config.hpp"
#include "lunc/fee_estimator.hpp"
#include "lunc/report.hpp"
#include "lunc/simulator.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParseError = 2,
  kExitHalted = 3,
  kExitInvariant = 4,
};

struct RunFlags {
  std::string genesis;
  std::string scenario;
  std::string out = "lunc-report";
  bool strict_halt = false;
  std::optional<std::uint64_t> seed;
};

int run_files(const fs::path& genesis_path, const fs::path& scenario_path, const RunFlags& flags) {
  auto spec = lunc::load_genesis_file(genesis_path);
  if (!spec) {
    spdlog::error("{}: {}", genesis_path.string(), spec.status().describe());
    return kExitParseError;
  }
  auto scenario = lunc::load_scenario_file(scenario_path);
  if (!scenario) {
    spdlog::error("{}: {}", scenario_path.string(), scenario.status().describe());
    return kExitParseError;
  }
  auto genesis = lunc::build_genesis(spec.value());
  if (!genesis) {
    spdlog::error("{}: {}", genesis_path.string(), genesis.status().describe());
    return kExitParseError;
  }
  if (flags.seed) spdlog::debug("--seed {} ignored: the simulation has no randomness", *flags.seed);

  lunc::RunOptions options;
  options.strict_halt = flags.strict_halt;
  spdlog::info("running '{}' from height {} to {}", scenario.value().name, genesis.value().height,
               scenario.value().end_height);
  const lunc::RunReport report = lunc::run_scenario(genesis.value(), scenario.value(), options);

  for (const auto& h : report.halts) {
    spdlog::warn("chain halted at {} (compatible power {}){}", h.height,
                 h.compatible_power_fraction.to_decimal(4), h.resumed ? ", resumed" : "");
  }
  for (const auto& w : report.warnings) spdlog::warn("{}", w);

  if (auto st = lunc::write_reports(flags.out, report, genesis.value().config.denoms); !st) {
    spdlog::error("{}", st.describe());
    return kExitFailure;
  }
  spdlog::info("final height {} state {}", report.final_height, lunc::to_hex(report.final_hash));
  spdlog::info("reports written to {}", flags.out);

  if (!report.invariant) {
    spdlog::error("invariant violated: {}", report.invariant.describe());
    return kExitInvariant;
  }
  if (report.halted_at_end) return kExitHalted;
  return kExitOk;
}

lunc::TaxComputationParams fee_params(const std::string& rate, const std::string& cap, const std::string& denom,
                                      const std::vector<std::string>& exempt) {
  lunc::TaxComputationParams params;
  params.tax_rate = lunc::Ratio::parse(rate);
  if (!cap.empty()) params.tax_caps[denom] = lunc::parse_amount(cap);
  params.exempt_denoms.insert(exempt.begin(), exempt.end());
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* level = std::getenv("LUNC_SIM_LOG")) spdlog::set_level(spdlog::level::from_str(level));

  CLI::App app{"Deterministic Luna Classic chain simulator"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Run a scenario file against a genesis file");
  run->add_option("--genesis", run_flags.genesis, "Genesis JSON")->required();
  run->add_option("--scenario", run_flags.scenario, "Scenario JSON")->required();
  run->add_option("--out", run_flags.out, "Report directory")->capture_default_str();
  run->add_flag("--strict-halt", run_flags.strict_halt, "Treat a consensus halt as terminal");
  run->add_option("--seed", run_flags.seed, "Accepted for compatibility; has no effect");

  std::string replay_name;
  std::string scenario_dir = LUNC_SCENARIO_DIR;
  RunFlags replay_flags;
  auto* replay = app.add_subcommand("replay", "Replay a bundled scenario");
  replay->add_option("name", replay_name, "Bundled scenario name")->required();
  replay->add_option("--scenario-dir", scenario_dir, "Directory holding bundled scenarios")->capture_default_str();
  replay->add_option("--out", replay_flags.out, "Report directory")->capture_default_str();
  replay->add_flag("--strict-halt", replay_flags.strict_halt, "Treat a consensus halt as terminal");
  replay->add_option("--seed", replay_flags.seed, "Accepted for compatibility; has no effect");

  std::string amount;
  std::string denom = "uluna";
  std::string gas = "0";
  std::string rate = "0";
  std::string cap;
  std::vector<std::string> exempt{"stake"};
  auto* estimate = app.add_subcommand("estimate-fee", "newFee = min(taxRate * amount, taxCap) + gas");
  estimate->add_option("--amount", amount, "Principal in micro-units")->required();
  estimate->add_option("--denom", denom)->capture_default_str();
  estimate->add_option("--gas", gas, "Gas fee in micro-units")->capture_default_str();
  estimate->add_option("--rate", rate, "Tax rate, e.g. 0.012")->capture_default_str();
  estimate->add_option("--cap", cap, "Tax cap in micro-units (default 2^100)");
  estimate->add_option("--exempt", exempt, "Tax-exempt denoms")->capture_default_str();

  bool token = false;
  auto* deduct = app.add_subcommand("deduct-tax", "Amount left after deducting the tax");
  deduct->add_option("--amount", amount, "Amount in micro-units")->required();
  deduct->add_option("--denom", denom)->capture_default_str();
  deduct->add_option("--rate", rate)->capture_default_str();
  deduct->add_option("--cap", cap);
  deduct->add_option("--exempt", exempt)->capture_default_str();
  deduct->add_flag("--token", token, "Treat the asset as a contract token");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_files(run_flags.genesis, run_flags.scenario, run_flags);
    if (*replay) {
      const fs::path dir = fs::path(scenario_dir) / replay_name;
      return run_files(dir / "genesis.json", dir / "scenario.json", replay_flags);
    }
    if (*estimate) {
      const auto params = fee_params(rate, cap, denom, exempt);
      const auto e = lunc::estimate_fee(lunc::parse_amount(amount), denom, lunc::parse_amount(gas), params);
      std::cout << "{\"amount\":\"" << lunc::to_string(e.amount) << "\",\"denom\":\"" << e.denom
                << "\",\"tax_rate\":\"" << e.tax_rate.to_decimal() << "\",\"tax_cap\":\""
                << lunc::to_string(e.tax_cap) << "\",\"gas\":\"" << lunc::to_string(e.gas) << "\",\"tax\":\""
                << lunc::to_string(e.tax) << "\",\"new_fee\":\"" << lunc::to_string(e.new_fee) << "\"}\n";
      return kExitOk;
    }
    if (*deduct) {
      const auto params = fee_params(rate, cap, denom, exempt);
      const lunc::Asset asset{token ? lunc::AssetKind::kToken : lunc::AssetKind::kNativeToken, denom,
                              lunc::parse_amount(amount)};
      auto left = lunc::deduct_tax(asset, params);
      if (!left) {
        spdlog::error("{}", left.status().describe());
        return kExitFailure;
      }
      std::cout << lunc::to_string(left.value()) << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitParseError;
  }
  return kExitFailure;
}
