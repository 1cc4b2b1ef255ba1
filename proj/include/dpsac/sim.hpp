#pragma once
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpsac/model.hpp"
#include "dpsac/scheduler.hpp"

namespace dpsac {

enum class SchedulerKind { Dpsac, Mcios, Bios };
enum class UpdaterKind { SimpleThreshold, DistThreshold, OnlineKMeans };

SchedulerKind parse_scheduler(const std::string& text);
UpdaterKind parse_updater(const std::string& text);
std::string scheduler_name(SchedulerKind k);
std::string updater_name(UpdaterKind k);

// Live progress of one application inside a run.
struct ApplicationRuntime {
    std::int64_t id = -1;
    ApplicationSpec spec;
    double release = 0;
    std::optional<double> finish;
    int instances_done = 0;

    enum class Phase { Waiting, Compute, Io, Done } phase = Phase::Waiting;
    double remaining = 0;  // s of compute left, or GB of io left

    double bytes_to_pfs = 0;
    double bytes_to_buffer = 0;
    std::int64_t cluster_id = -1;

    double rho() const { return spec.dedicated_efficiency(); }
};

// Achieved efficiency at time t; equals rho at the release instant.
double efficiency_now(const ApplicationRuntime& app, double t);

struct RunOverrides {
    int k_c = 5;                   // max clusters (1 degenerates DPSAC to MCIOS)
    double drift_threshold = 0.1;
    int bins = 20;
    bool literal_buffer_test = false;
};

struct TickRecord {
    double time = 0;
    std::int64_t cluster_id = -1;
    std::vector<AppAllocation> apps;  // sorted by app id
    double drain = 0;
};

// Collected while the run executes; the acceptance suite reads these.
struct InvariantStats {
    double max_conservation_drift = 0;  // GB, per-application byte accounting
    double max_occupancy_overrun = 0;   // GB outside [0, capacity]
    double max_cluster_rate_excess = 0; // GB/s over a partition's drain budget
    double max_global_rate_excess = 0;  // GB/s over the PFS bandwidth
    double max_app_rate_excess = 0;     // GB/s over an application's B_i
};

struct AppMetrics {
    std::string name;
    std::int64_t id = -1;
    double release = 0;
    double finish = 0;
    double efficiency = 0;  // achieved rho at the finish time
    double dilation = 1;
};

struct MetricsReport {
    double system_efficiency = 0;
    double dilation = 1;
    double efficiency_ceiling = 0;  // (1/N) sum beta_i rho_i
    std::vector<AppMetrics> per_app;
    InvariantStats invariants;

    std::string scenario;
    SchedulerKind scheduler = SchedulerKind::Dpsac;
    UpdaterKind updater = UpdaterKind::SimpleThreshold;
    StrategyConfig strategy;
    std::uint64_t seed = 0;

    std::vector<TickRecord> trace;  // only when requested
};

struct RunConfig {
    ScenarioSpec scenario;
    SystemConfig system;
    SchedulerKind scheduler = SchedulerKind::Dpsac;
    UpdaterKind updater = UpdaterKind::SimpleThreshold;
    StrategyConfig strategy;
    std::uint64_t seed = 1;
    RunOverrides overrides;
    bool record_trace = false;
};

struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs the scenario to completion of every admitted application and reports
// the objective metrics. Deterministic for a fixed config and seed.
MetricsReport run(const RunConfig& config);

// Objective metrics over completed applications; N is the processor total
// over the scenario's applications.
MetricsReport compute_metrics(std::span<const ApplicationRuntime> completed,
                              const SystemConfig& system);

}  // namespace dpsac
