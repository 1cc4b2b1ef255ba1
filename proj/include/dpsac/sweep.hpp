#pragma once
#include <string>
#include <vector>

#include "dpsac/scenario_io.hpp"
#include "dpsac/sim.hpp"

namespace dpsac {

struct CsvRow {
    std::string scenario;
    std::string scheduler;
    std::string updater;
    std::string strategy;
    double gamma = 0.5;
    std::string seed;  // run seed, or "mean" for the aggregate row
    double syseff = 0;
    double dilation = 1;
    long wall_ms = 0;
};

std::string csv_header();
std::string csv_line(const CsvRow& row);
void write_csv(const std::string& path, const std::vector<CsvRow>& rows);
std::vector<CsvRow> read_csv(const std::string& path);

// Seeds for one configuration: the base seed, or 1..repeats when absent.
std::vector<std::uint64_t> seeds_for(int repeats, std::optional<std::uint64_t> base);

struct SweepResult {
    std::vector<CsvRow> rows;              // per-run rows plus one aggregate per config
    std::vector<MetricsReport> reports;    // per-run reports, row order
};

// One configuration, repeated over seeds, with the aggregate row appended.
SweepResult run_repeated(const CliConfig& cfg, const ScenarioSpec& scenario);

// Sets #1..#10 x {dpsac, mcios, bios}, MinMax-0.5.
SweepResult sweep_fig6(const CliConfig& cfg);

// Dynamic scenario x {st, dt, ok} x incoming kind {EAP, LAP5, Silverton}.
SweepResult sweep_fig7(const CliConfig& cfg);

// The dynamic scenario restricted to one periodic joiner.
ScenarioSpec dynamic_with_join(const std::string& kind);

}  // namespace dpsac
