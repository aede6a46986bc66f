#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coarselab/config.hpp"
#include "coarselab/io.hpp"

namespace coarselab {

enum class Verdict { Pass, Fail, Exploratory };
std::string_view to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::Exploratory;
  Json measured;
  Json target;
  std::string note;
};

struct ScenarioConfig {
  std::string name;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;
  double horizon = 20.0;
  double step = 0.05;
  /// Finest grid spacing (grid scenarios only).
  std::optional<double> spacing;
  /// Further scenario keys, e.g. rate_steps or x_max.
  KeyValueConfig extra;
  bool write_files = true;
};

struct ScenarioReport {
  std::string name;
  Json input;
  std::vector<Check> checks;
  Json details = Json::object();
  std::vector<std::string> manifest;

  /// No check failed (exploratory checks never fail).
  bool ok() const;
  const Check* find(const std::string& check) const;
  Json to_json(const std::string& timestamp) const;
};

inline constexpr int kReportSchemaVersion = 1;

struct ScenarioInfo {
  std::string name;
  std::string description;
};

/// Registered scenarios in lexicographic order.
std::vector<ScenarioInfo> list_scenarios();

/// Runs a scenario and, when `write_files` is set, writes report.json and its
/// CSV files to out_dir/<name>/.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// Merges the keys seed, horizon, step and spacing of a config file into `config`.
void apply_config_file(ScenarioConfig& config, const KeyValueConfig& file);

}  // namespace coarselab
