#pragma once
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dpsac {

struct ClusterMember {
    std::int64_t app_id = -1;
    double length = 0;  // io-phase length, s
};

// A group of applications with similar io-phase length.
struct Cluster {
    std::int64_t id = -1;
    std::vector<ClusterMember> members;
    double centroid = 0;   // mean member length
    double time_unit = 0;  // discretization quantum: mean member io time

    void refresh();  // recompute centroid/time_unit from members
};

// Prefix sums over sorted values for O(1) range sum-of-squared-deviations.
struct PrefixSums {
    std::vector<double> sum;  // sum[i] = x_1 + .. + x_i
    std::vector<double> sq;

    explicit PrefixSums(std::span<const double> sorted_values);
    std::size_t size() const { return sum.size() - 1; }
};

// Sum of squared deviations of x_j..x_i (1-based, inclusive) from their mean.
double within_ss(const PrefixSums& ps, std::size_t j, std::size_t i);

// DP tables: d[i][m] = minimum wss clustering the first i sorted values into
// m clusters; split[i][m] = smallest minimizing start index of the last cluster.
struct DpTables {
    std::size_t n = 0;
    int k_max = 0;
    std::vector<double> d;        // (n+1) x (k_max+1), row-major
    std::vector<std::size_t> split;

    double wss(std::size_t i, int m) const { return d[i * (k_max + 1) + m]; }
    std::size_t split_at(std::size_t i, int m) const { return split[i * (k_max + 1) + m]; }
};

DpTables kmeans_tables(std::span<const double> sorted_lengths, int k_max);

struct ClusteringResult {
    std::vector<double> sorted_lengths;
    std::vector<std::size_t> sorted_order;  // original index by sorted position
    std::vector<double> wss_by_k;           // wss for K = 1..k_max
    int chosen_k = 1;                       // elbow pick

    // Cluster assignment for a given K: groups of original indices, in
    // ascending length order.
    std::vector<std::vector<std::size_t>> clusters_for(int k) const;

private:
    friend ClusteringResult kmeans_1d_dp(std::span<const double>, int);
    std::vector<std::vector<std::size_t>> boundaries_by_k_;  // cluster start positions, sorted space
};

// Optimal contiguous K-means over one dimension, O(n^2 K) time, O(nK) space.
ClusteringResult kmeans_1d_dp(std::span<const double> lengths, int k_max);

// Picks K by the largest second difference of the wss curve; K=1 acts as the
// no-structure baseline, ties resolve toward smaller K.
int elbow_select(std::span<const double> wss_by_k);

struct MergeResult {
    std::vector<Cluster> clusters;
    // (absorbed cluster id, surviving cluster id) for occupancy carryover.
    std::vector<std::pair<std::int64_t, std::int64_t>> absorbed;
};

// Merges a freshly clustered batch into the existing clusters: the smaller
// side is absorbed into the closest cluster of the larger side.
MergeResult merge_clusters(std::vector<Cluster> fresh, std::vector<Cluster> existing);

enum class BatchPolicy { Insert, ClusterAndMerge };

// Insert one-by-one when the batch is no larger than the mean existing
// cluster size; cluster-and-merge otherwise.
BatchPolicy batch_policy(std::size_t batch_size, std::span<const Cluster> existing);

// Splits at the largest gap between consecutive sorted member lengths. Ids of
// the two halves are unset; the caller assigns them.
std::pair<Cluster, Cluster> split_at_largest_gap(const Cluster& c);

}  // namespace dpsac
