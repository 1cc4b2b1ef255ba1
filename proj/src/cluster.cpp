#include "dpsac/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dpsac {

void Cluster::refresh() {
    if (members.empty()) {
        centroid = 0;
        time_unit = 0;
        return;
    }
    double total = 0;
    for (const auto& m : members) total += m.length;
    centroid = total / static_cast<double>(members.size());
    time_unit = centroid;  // lengths are io times, so the two coincide
}

PrefixSums::PrefixSums(std::span<const double> sorted_values) {
    sum.assign(sorted_values.size() + 1, 0.0);
    sq.assign(sorted_values.size() + 1, 0.0);
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        sum[i + 1] = sum[i] + sorted_values[i];
        sq[i + 1] = sq[i] + sorted_values[i] * sorted_values[i];
    }
}

double within_ss(const PrefixSums& ps, std::size_t j, std::size_t i) {
    if (j < 1 || j > i || i > ps.size()) throw std::out_of_range("within_ss range");
    double s = ps.sum[i] - ps.sum[j - 1];
    double s2 = ps.sq[i] - ps.sq[j - 1];
    double n = static_cast<double>(i - j + 1);
    double ss = s2 - s * s / n;
    return ss > 0 ? ss : 0.0;  // guard tiny negative rounding
}

DpTables kmeans_tables(std::span<const double> sorted_lengths, int k_max) {
    std::size_t n = sorted_lengths.size();
    if (n == 0) throw std::invalid_argument("kmeans over an empty input");
    if (k_max < 1 || static_cast<std::size_t>(k_max) > n)
        throw std::invalid_argument("k_max must be in [1, n]");

    PrefixSums ps(sorted_lengths);
    DpTables t;
    t.n = n;
    t.k_max = k_max;
    t.d.assign((n + 1) * (k_max + 1), 0.0);
    t.split.assign((n + 1) * (k_max + 1), 0);
    auto D = [&](std::size_t i, int m) -> double& { return t.d[i * (k_max + 1) + m]; };
    auto J = [&](std::size_t i, int m) -> std::size_t& { return t.split[i * (k_max + 1) + m]; };

    for (std::size_t i = 1; i <= n; ++i) {
        D(i, 1) = within_ss(ps, 1, i);
        J(i, 1) = 1;
    }
    for (int m = 2; m <= k_max; ++m) {
        for (std::size_t i = static_cast<std::size_t>(m); i <= n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = static_cast<std::size_t>(m);
            for (std::size_t j = static_cast<std::size_t>(m); j <= i; ++j) {
                double cand = D(j - 1, m - 1) + within_ss(ps, j, i);
                if (cand < best) {  // strict: smallest minimizing j wins
                    best = cand;
                    best_j = j;
                }
            }
            D(i, m) = best;
            J(i, m) = best_j;
        }
    }
    return t;
}

ClusteringResult kmeans_1d_dp(std::span<const double> lengths, int k_max) {
    std::size_t n = lengths.size();
    if (n == 0) throw std::invalid_argument("kmeans over an empty input");
    if (k_max < 1 || static_cast<std::size_t>(k_max) > n)
        throw std::invalid_argument("k_max must be in [1, n]");

    ClusteringResult r;
    r.sorted_order.resize(n);
    std::iota(r.sorted_order.begin(), r.sorted_order.end(), std::size_t{0});
    std::stable_sort(r.sorted_order.begin(), r.sorted_order.end(),
                     [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });
    r.sorted_lengths.reserve(n);
    for (std::size_t idx : r.sorted_order) r.sorted_lengths.push_back(lengths[idx]);

    DpTables t = kmeans_tables(r.sorted_lengths, k_max);
    r.wss_by_k.reserve(k_max);
    r.boundaries_by_k_.resize(k_max);
    for (int k = 1; k <= k_max; ++k) {
        r.wss_by_k.push_back(t.wss(n, k));
        // Backtrack the start position of each cluster.
        std::vector<std::size_t> starts(k);
        std::size_t i = n;
        for (int m = k; m >= 1; --m) {
            std::size_t j = t.split_at(i, m);
            starts[m - 1] = j;
            i = j - 1;
        }
        r.boundaries_by_k_[k - 1] = std::move(starts);
    }
    r.chosen_k = elbow_select(r.wss_by_k);
    return r;
}

std::vector<std::vector<std::size_t>> ClusteringResult::clusters_for(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > boundaries_by_k_.size())
        throw std::out_of_range("no partition computed for this K");
    const auto& starts = boundaries_by_k_[k - 1];
    std::vector<std::vector<std::size_t>> out(starts.size());
    std::size_t n = sorted_order.size();
    for (std::size_t c = 0; c < starts.size(); ++c) {
        std::size_t lo = starts[c];
        std::size_t hi = (c + 1 < starts.size()) ? starts[c + 1] - 1 : n;
        for (std::size_t pos = lo; pos <= hi; ++pos)
            out[c].push_back(sorted_order[pos - 1]);
    }
    return out;
}

int elbow_select(std::span<const double> wss_by_k) {
    std::size_t n = wss_by_k.size();
    if (n == 0) throw std::invalid_argument("empty wss curve");
    if (n == 1) return 1;
    if (n == 2) return wss_by_k[1] < wss_by_k[0] ? 2 : 1;
    int best_k = 1;
    double best_score = 0.0;  // K=1 baseline: no elbow
    for (std::size_t k = 2; k <= n - 1; ++k) {
        double drop_here = wss_by_k[k - 2] - wss_by_k[k - 1];
        double drop_next = wss_by_k[k - 1] - wss_by_k[k];
        double score = drop_here - drop_next;
        if (score > best_score) {
            best_score = score;
            best_k = static_cast<int>(k);
        }
    }
    return best_k;
}

namespace {

double weighted_centroid(const Cluster& a, const Cluster& b) {
    double total = a.centroid * a.members.size() + b.centroid * b.members.size();
    return total / static_cast<double>(a.members.size() + b.members.size());
}

std::size_t closest_index(const std::vector<Cluster>& targets, double centroid) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        double d = std::abs(targets[i].centroid - centroid);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

MergeResult merge_clusters(std::vector<Cluster> fresh, std::vector<Cluster> existing) {
    MergeResult r;
    if (fresh.empty()) {
        r.clusters = std::move(existing);
        return r;
    }
    if (existing.empty()) {
        r.clusters = std::move(fresh);
        return r;
    }
    bool fresh_into_existing = fresh.size() < existing.size();
    std::vector<Cluster>& hosts = fresh_into_existing ? existing : fresh;
    std::vector<Cluster>& guests = fresh_into_existing ? fresh : existing;
    for (Cluster& g : guests) {
        Cluster& h = hosts[closest_index(hosts, g.centroid)];
        h.centroid = weighted_centroid(h, g);
        h.members.insert(h.members.end(), g.members.begin(), g.members.end());
        h.refresh();
        r.absorbed.emplace_back(g.id, h.id);
    }
    r.clusters = std::move(hosts);
    return r;
}

BatchPolicy batch_policy(std::size_t batch_size, std::span<const Cluster> existing) {
    if (existing.empty())
        return batch_size <= 1 ? BatchPolicy::Insert : BatchPolicy::ClusterAndMerge;
    std::size_t members = 0;
    for (const auto& c : existing) members += c.members.size();
    double mean_size = static_cast<double>(members) / static_cast<double>(existing.size());
    return static_cast<double>(batch_size) <= mean_size ? BatchPolicy::Insert
                                                        : BatchPolicy::ClusterAndMerge;
}

std::pair<Cluster, Cluster> split_at_largest_gap(const Cluster& c) {
    if (c.members.size() < 2) throw std::invalid_argument("cannot split a cluster of size < 2");
    std::vector<ClusterMember> sorted = c.members;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ClusterMember& a, const ClusterMember& b) {
                         return a.length < b.length;
                     });
    std::size_t cut = 1;
    double widest = -1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        double gap = sorted[i].length - sorted[i - 1].length;
        if (gap > widest) {
            widest = gap;
            cut = i;
        }
    }
    Cluster lo, hi;
    lo.members.assign(sorted.begin(), sorted.begin() + cut);
    hi.members.assign(sorted.begin() + cut, sorted.end());
    lo.refresh();
    hi.refresh();
    return {std::move(lo), std::move(hi)};
}

}  // namespace dpsac
