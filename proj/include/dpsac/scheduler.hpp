#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpsac/load.hpp"
#include "dpsac/model.hpp"
#include "dpsac/partition.hpp"
#include "dpsac/rng.hpp"

namespace dpsac {

enum class StrategyKind { MinDilation, MaxSysEff, MinMax };

struct StrategyConfig {
    StrategyKind kind = StrategyKind::MinMax;
    double gamma = 0.5;  // MinMax blend: 1 -> pure MinDilation, 0 -> pure MaxSysEff
};

StrategyConfig parse_strategy(const std::string& text);  // "mindilation" | "maxsyseff" | "minmax:g"
std::string strategy_name(const StrategyConfig& s);

// One application currently requesting I/O, as the priority keys see it.
struct IoRequest {
    std::int64_t app_id = -1;
    int bandwidth = 0;     // B_i
    int nodes = 0;         // beta_i
    double rho = 1;        // dedicated-mode efficiency
    double rho_now = 0;    // achieved efficiency at scheduling time
    double release = 0;
};

// Total order over the requests: MinDilation favors the most-delayed
// (ascending rho_now/rho), MaxSysEff the largest recoverable processor work
// (descending beta*(rho - rho_now)), MinMax blends the two rank positions.
std::vector<std::size_t> priority_order(std::span<const IoRequest> requests,
                                        const StrategyConfig& strategy);

struct AppAllocation {
    std::int64_t app_id = -1;
    double pfs_rate = 0;     // GB/s
    double buffer_rate = 0;  // GB/s
};

struct Allocation {
    std::vector<AppAllocation> apps;
    double drain_amount = 0;  // GB emptied from the partition this tick
};

struct SchedulerOptions {
    // Keep the printed form of the buffer-fit test (flips the occupancy sign).
    bool literal_buffer_test = false;
};

// Probabilistic per-cluster scheduling: full rates when the pending load fits
// the drain budget, otherwise a geometric selection thinned by the
// transition-to-full probability, falling back to deterministic truncation.
Allocation schedule_cluster(std::span<const IoRequest> pending, const LoadDistribution& dist,
                            const Partition& part, const StrategyConfig& strategy,
                            const SchedulerOptions& options, Rng& rng);

// Markov-chain baseline: the cluster scheduler over one global partition.
Allocation schedule_mcios(std::span<const IoRequest> pending, const LoadDistribution& dist,
                          const Partition& global_partition, const StrategyConfig& strategy,
                          const SchedulerOptions& options, Rng& rng);

// Best-effort baseline: greedy PFS grants in priority order, overflow into
// the buffer while space remains, no buffer-state awareness.
Allocation schedule_bios(std::span<const IoRequest> pending, const SystemConfig& system,
                         double occupancy, int capacity, const StrategyConfig& strategy);

}  // namespace dpsac
