#include <iostream>

#include "CLI11.hpp"

#include "coarselab/scenarios.hpp"

using namespace coarselab;

namespace {

void print_report(const ScenarioReport& report) {
  for (const Check& c : report.checks) {
    std::cout << '[' << to_string(c.verdict) << "] " << c.name << ": " << c.measured.dump() << '\n';
  }
  std::cout << report.name << ": " << (report.ok() ? "ok" : "FAILED") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarselab: numerical experiments on hyperbolic metric spaces"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List registered scenarios");

  ScenarioConfig config;
  std::string out = config.out_dir.string();
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<double> spacing, horizon;
  auto* run = app.add_subcommand("run", "Run a scenario and write its report");
  run->add_option("scenario", config.name, "Scenario name")->required();
  run->add_option("--out", out, "Output directory")->capture_default_str();
  run->add_option("--config", config_file, "Key-value config file");
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--spacing", spacing, "Finest grid spacing");
  run->add_option("--horizon", horizon, "Ray horizon T_max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& info : list_scenarios()) std::cout << info.name << "  " << info.description << '\n';
    return 0;
  }

  try {
    if (!config_file.empty()) apply_config_file(config, KeyValueConfig::load(config_file));
    if (run->count("--out") > 0 || config_file.empty()) config.out_dir = out;
    if (seed) config.seed = *seed;
    if (spacing) config.spacing = *spacing;
    if (horizon) config.horizon = *horizon;
    const ScenarioReport report = run_scenario(config);
    print_report(report);
    std::cout << "report: " << (config.out_dir / config.name / "report.json").string() << '\n';
    return report.ok() ? 0 : 1;
  } catch (const Rejection& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
