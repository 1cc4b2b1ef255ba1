#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "dpsac/model.hpp"

namespace dpsac {

// Scenario files are JSON mirroring ScenarioSpec; entries either reference a
// catalog application (optionally scaled) or spell the parameters out.
ScenarioSpec parse_scenario_json(const std::string& text);
ScenarioSpec load_scenario_file(const std::string& path);
std::string scenario_to_json(const ScenarioSpec& scenario);

// Builtin name, or a path to a scenario file.
ScenarioSpec resolve_scenario(const std::string& selector);

// Flat run configuration; a config file carries the same keys as the CLI
// flags and flags override file values.
struct CliConfig {
    std::string scenario = "set5";
    std::string scheduler = "dpsac";
    std::string updater = "st";
    std::string strategy = "minmax:0.5";
    int repeats = 5;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    int k_c = 5;
    double drift_threshold = 0.1;
    int bins = 20;
    bool literal_buffer_test = false;
    SystemConfig system;
};

void apply_config_json(CliConfig& cfg, const std::string& text);
void load_config_file(CliConfig& cfg, const std::string& path);

}  // namespace dpsac
