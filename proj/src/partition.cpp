#include "dpsac/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsac {

const Partition* PartitionSet::find(std::int64_t cluster_id) const {
    for (const auto& p : partitions)
        if (p.cluster_id == cluster_id) return &p;
    return nullptr;
}

Partition* PartitionSet::find(std::int64_t cluster_id) {
    for (auto& p : partitions)
        if (p.cluster_id == cluster_id) return &p;
    return nullptr;
}

double PartitionSet::total_occupancy() const {
    double total = 0;
    for (const auto& p : partitions) total += p.held_bytes();
    return total;
}

double expected_load(std::span<const std::pair<double, int>> members) {
    double eio = 0;
    for (const auto& [p, b] : members) eio += p * b;
    return eio;
}

PartitionSet compute_shares(std::span<const std::pair<std::int64_t, double>> cluster_eios,
                            const SystemConfig& system) {
    if (cluster_eios.empty()) throw std::invalid_argument("no clusters to partition");
    double teio = 0;
    for (const auto& [id, eio] : cluster_eios) {
        if (eio < 0) throw std::invalid_argument("negative expected load");
        teio += eio;
    }
    if (teio <= 0) throw std::invalid_argument("all expected loads are zero");

    PartitionSet set;
    set.teio = teio;
    set.overload_warning = teio >= system.pfs_bandwidth;
    for (const auto& [id, eio] : cluster_eios) {
        Partition p;
        p.cluster_id = id;
        p.expected_load = eio;
        p.share = eio / teio;
        // Floor rounding: a small remainder stays unallocated rather than
        // over-committing the buffer or the PFS.
        p.buffer_capacity = static_cast<int>(std::floor(p.share * system.buffer_size + 1e-9));
        p.drain_budget = static_cast<int>(std::floor(p.share * system.pfs_bandwidth + 1e-9));
        set.partitions.push_back(p);
    }
    return set;
}

PartitionSet repartition(const PartitionSet& old,
                         std::span<const std::pair<std::int64_t, double>> new_cluster_eios,
                         std::span<const CarryOver> carryovers,
                         const SystemConfig& system) {
    PartitionSet next = compute_shares(new_cluster_eios, system);

    for (const auto& op : old.partitions) {
        double bytes = op.held_bytes();
        if (bytes <= 0) continue;

        const CarryOver* co = nullptr;
        for (const auto& c : carryovers)
            if (c.old_id == op.cluster_id) co = &c;

        std::vector<Partition*> heirs;
        if (co) {
            for (std::int64_t id : co->successor_ids)
                if (Partition* p = next.find(id)) heirs.push_back(p);
        } else if (next.find(op.cluster_id)) {
            heirs.push_back(next.find(op.cluster_id));  // same cluster survives
        }
        if (heirs.empty()) throw std::invalid_argument("unattributable buffer occupancy");

        double eio_total = 0;
        for (Partition* h : heirs) eio_total += h->expected_load;
        for (std::size_t i = 0; i < heirs.size(); ++i) {
            double w = eio_total > 0 ? heirs[i]->expected_load / eio_total
                                     : 1.0 / static_cast<double>(heirs.size());
            heirs[i]->occupancy += bytes * w;
        }
    }

    for (auto& p : next.partitions) {
        if (p.occupancy > p.buffer_capacity) {
            p.drain_debt = p.occupancy - p.buffer_capacity;
            p.occupancy = p.buffer_capacity;
        }
    }
    return next;
}

}  // namespace dpsac
