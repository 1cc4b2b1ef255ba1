#pragma once
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dpsac/model.hpp"

namespace dpsac {

// A cluster's slice of the burst buffer and of the PFS drain bandwidth.
struct Partition {
    std::int64_t cluster_id = -1;
    double expected_load = 0;  // EIO_k, GB/s
    double share = 0;          // U_k = EIO_k / TEIO
    int buffer_capacity = 0;   // floor(U_k * S), GB
    int drain_budget = 0;      // floor(U_k * B), GB/s
    double occupancy = 0;      // L_k, GB, always <= buffer_capacity
    // Bytes carried over a shrinking repartition that no longer fit; they
    // drain before any new buffered write is admitted.
    double drain_debt = 0;

    double held_bytes() const { return occupancy + drain_debt; }
};

struct PartitionSet {
    std::vector<Partition> partitions;
    double teio = 0;
    bool overload_warning = false;  // TEIO >= B: scheduling throttles, no abort

    const Partition* find(std::int64_t cluster_id) const;
    Partition* find(std::int64_t cluster_id);
    double total_occupancy() const;
};

// EIO_k = sum of P_i * B_i over the cluster's members.
double expected_load(std::span<const std::pair<double, int>> members);

// Proportional split of buffer capacity and drain bandwidth by expected load.
PartitionSet compute_shares(std::span<const std::pair<std::int64_t, double>> cluster_eios,
                            const SystemConfig& system);

// Successors of one old cluster in the new layout (empty = unattributable).
struct CarryOver {
    std::int64_t old_id = -1;
    std::vector<std::int64_t> successor_ids;
};

// Recomputes shares for a new cluster layout, carrying occupancy to successor
// clusters (splits divide proportionally to the successors' EIO; overflow
// beyond a new capacity becomes drain debt). Total held bytes are conserved.
PartitionSet repartition(const PartitionSet& old,
                         std::span<const std::pair<std::int64_t, double>> new_cluster_eios,
                         std::span<const CarryOver> carryovers,
                         const SystemConfig& system);

}  // namespace dpsac
