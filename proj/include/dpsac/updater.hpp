#pragma once
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpsac/cluster.hpp"
#include "dpsac/partition.hpp"
#include "dpsac/rng.hpp"

namespace dpsac {

struct UpdaterConfig {
    double drift_threshold = 0.1;  // bound on cumulative / distribution change
    int k_c = 5;                   // cluster-count bound, also the DT check period
    int bins = 20;                 // DT histogram resolution
};

struct InsertOutcome {
    std::int64_t cluster_id = -1;  // cluster now holding the inserted member
    bool layout_changed = false;   // a split or center change; repartition needed
    std::vector<CarryOver> carryovers;
};

// Jensen-Shannon divergence between two histograms sharing bin edges
// (counts are normalized internally); result lies in [0, ln 2].
double js_divergence(std::span<const double> p, std::span<const double> q);

// a) Simple thresholding: per-cluster cumulative-centroid drift against the
// centroid frozen at the last clustering; splits at the largest gap.
class SimpleThresholdUpdater {
public:
    explicit SimpleThresholdUpdater(UpdaterConfig cfg = {}) : cfg_(cfg) {}

    void rebuild(std::span<const Cluster> clusters);
    InsertOutcome insert(std::vector<Cluster>& clusters, ClusterMember member,
                         std::int64_t& next_cluster_id);
    void on_cluster_removed(std::int64_t cluster_id);
    void on_member_removed(std::int64_t cluster_id, double length);

private:
    struct Frozen {
        double centroid = 0;
        double min_length = 0;
        double max_length = 0;
    };
    void freeze(const Cluster& c);

    UpdaterConfig cfg_;
    std::unordered_map<std::int64_t, Frozen> frozen_;
};

// b) Distribution-based thresholding: binned io-length histograms, JS
// divergence checked every k_c insertions.
class DistThresholdUpdater {
public:
    explicit DistThresholdUpdater(UpdaterConfig cfg = {}) : cfg_(cfg) {}

    void rebuild(std::span<const Cluster> clusters);
    InsertOutcome insert(std::vector<Cluster>& clusters, ClusterMember member,
                         std::int64_t& next_cluster_id);
    void on_cluster_removed(std::int64_t cluster_id);
    void on_member_removed(std::int64_t cluster_id, double length);

    const std::vector<double>& baseline() const { return p_; }
    const std::vector<double>& current() const { return q_; }
    int bin_of(double length) const;

private:
    UpdaterConfig cfg_;
    bool edges_fixed_ = false;
    double lo_ = 0, width_ = 0;
    std::vector<double> p_, q_;  // counts
    int changes_since_check_ = 0;
};

// c) Online K-means with facility-cost doubling; centers may drift away from
// member means, so the updater owns its center list keyed by cluster id.
class OnlineKMeansUpdater {
public:
    explicit OnlineKMeansUpdater(UpdaterConfig cfg = {}) : cfg_(cfg) {}

    void rebuild(std::span<const Cluster> clusters);
    InsertOutcome insert(std::vector<Cluster>& clusters, ClusterMember member,
                         std::int64_t& next_cluster_id, Rng& rng);
    void on_cluster_removed(std::int64_t cluster_id);
    void on_member_removed(std::int64_t cluster_id, double length);
    // Re-pins a cluster centroid to its owned center after membership edits.
    void restore_center(Cluster& c) const;

    int epoch() const { return epoch_; }
    int additions_in_epoch() const { return additions_; }
    double facility_cost() const { return facility_; }
    double initial_w() const { return w_star_; }
    long points_seen() const { return points_; }
    std::size_t center_count() const { return centers_.size(); }

private:
    struct Center {
        std::int64_t cluster_id;
        double value;
    };

    UpdaterConfig cfg_;
    std::vector<Center> centers_;
    int target_k_ = 1;
    double w_star_ = 1.0;
    double facility_ = 1.0;
    int epoch_ = 1;
    int additions_ = 0;
    long points_ = 0;
};

// Shared exit path: drops the member from its cluster, refreshes or deletes
// the cluster; shares stay as they are until the next repartition trigger.
struct RemovalResult {
    std::int64_t cluster_id = -1;
    double length = 0;
    bool cluster_deleted = false;
};
RemovalResult remove_member(std::vector<Cluster>& clusters, std::int64_t app_id);

}  // namespace dpsac
