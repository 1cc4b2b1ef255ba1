#include "dpsac/updater.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpsac {

namespace {

std::size_t closest_cluster(std::span<const Cluster> clusters, double length) {
    if (clusters.empty()) throw std::invalid_argument("insert with no clusters");
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        double d = std::abs(clusters[i].centroid - length);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

// Replaces clusters[at] by the two halves of a largest-gap split and reports
// the carryover mapping. Returns ids of the halves.
std::pair<std::int64_t, std::int64_t> apply_split(std::vector<Cluster>& clusters, std::size_t at,
                                                  std::int64_t& next_cluster_id,
                                                  InsertOutcome& out) {
    Cluster original = clusters[at];
    auto [lo, hi] = split_at_largest_gap(original);
    lo.id = next_cluster_id++;
    hi.id = next_cluster_id++;
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(at));
    clusters.push_back(lo);
    clusters.push_back(hi);
    out.layout_changed = true;
    out.carryovers.push_back({original.id, {lo.id, hi.id}});
    return {lo.id, hi.id};
}

std::int64_t cluster_holding(const std::vector<Cluster>& clusters, std::int64_t app_id) {
    for (const auto& c : clusters)
        for (const auto& m : c.members)
            if (m.app_id == app_id) return c.id;
    return -1;
}

}  // namespace

double js_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("histogram bin counts differ");
    double sp = 0, sq = 0;
    for (double v : p) sp += v;
    for (double v : q) sq += v;
    if (sp <= 0 || sq <= 0) throw std::invalid_argument("histogram has no mass");
    double d = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double a = p[i] / sp;
        double b = q[i] / sq;
        double m = 0.5 * (a + b);
        if (a > 0) d += 0.5 * a * std::log(a / m);
        if (b > 0) d += 0.5 * b * std::log(b / m);
    }
    return d < 0 ? 0.0 : d;
}

// ---- simple thresholding ----

void SimpleThresholdUpdater::freeze(const Cluster& c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& m : c.members) {
        lo = std::min(lo, m.length);
        hi = std::max(hi, m.length);
    }
    frozen_[c.id] = {c.centroid, lo, hi};
}

void SimpleThresholdUpdater::rebuild(std::span<const Cluster> clusters) {
    frozen_.clear();
    for (const auto& c : clusters) freeze(c);
}

InsertOutcome SimpleThresholdUpdater::insert(std::vector<Cluster>& clusters, ClusterMember member,
                                             std::int64_t& next_cluster_id) {
    InsertOutcome out;
    std::size_t at = closest_cluster(clusters, member.length);
    Cluster& c = clusters[at];
    c.members.push_back(member);
    c.refresh();  // the cumulative centroid is the running member mean
    out.cluster_id = c.id;

    auto it = frozen_.find(c.id);
    if (it == frozen_.end()) {
        freeze(c);
        return out;
    }
    const Frozen& base = it->second;
    double range = base.max_length - base.min_length;
    double drift = range > 0 ? std::abs(c.centroid - base.centroid) / range : 0.0;
    if (drift >= cfg_.drift_threshold &&
        c.members.size() > static_cast<std::size_t>(cfg_.k_c)) {
        std::int64_t old_id = c.id;
        auto [lo_id, hi_id] = apply_split(clusters, at, next_cluster_id, out);
        frozen_.erase(old_id);
        for (const Cluster& nc : clusters)
            if (nc.id == lo_id || nc.id == hi_id) freeze(nc);
        out.cluster_id = cluster_holding(clusters, member.app_id);
    }
    return out;
}

void SimpleThresholdUpdater::on_cluster_removed(std::int64_t cluster_id) {
    frozen_.erase(cluster_id);
}

void SimpleThresholdUpdater::on_member_removed(std::int64_t, double) {}

// ---- distribution-based thresholding ----

int DistThresholdUpdater::bin_of(double length) const {
    if (width_ <= 0) return 0;
    int b = static_cast<int>(std::floor((length - lo_) / width_));
    if (b < 0) b = 0;
    if (b >= cfg_.bins) b = cfg_.bins - 1;
    return b;
}

void DistThresholdUpdater::rebuild(std::span<const Cluster> clusters) {
    if (!edges_fixed_) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& c : clusters)
            for (const auto& m : c.members) {
                lo = std::min(lo, m.length);
                hi = std::max(hi, m.length);
            }
        if (!(lo <= hi)) throw std::invalid_argument("rebuild over empty clusters");
        lo_ = lo;
        width_ = (hi - lo) / static_cast<double>(cfg_.bins);
        edges_fixed_ = true;
    }
    p_.assign(static_cast<std::size_t>(cfg_.bins), 0.0);
    for (const auto& c : clusters)
        for (const auto& m : c.members) p_[static_cast<std::size_t>(bin_of(m.length))] += 1;
    q_ = p_;
    changes_since_check_ = 0;
}

InsertOutcome DistThresholdUpdater::insert(std::vector<Cluster>& clusters, ClusterMember member,
                                           std::int64_t& next_cluster_id) {
    InsertOutcome out;
    std::size_t at = closest_cluster(clusters, member.length);
    Cluster& c = clusters[at];
    c.members.push_back(member);
    c.refresh();
    out.cluster_id = c.id;
    q_[static_cast<std::size_t>(bin_of(member.length))] += 1;

    if (++changes_since_check_ < cfg_.k_c) return out;
    changes_since_check_ = 0;
    if (js_divergence(p_, q_) < cfg_.drift_threshold) return out;

    // Split the cluster whose centroid bin changed the most, relative to p.
    double sp = 0, sq = 0;
    for (double v : p_) sp += v;
    for (double v : q_) sq += v;
    double best_score = -1;
    std::size_t best = clusters.size();
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (clusters[i].members.size() < 2) continue;
        int b = bin_of(clusters[i].centroid);
        double pb = p_[static_cast<std::size_t>(b)] / sp;
        if (pb <= 0) continue;
        double qb = q_[static_cast<std::size_t>(b)] / sq;
        double score = std::abs(pb - qb) / pb;
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    if (best == clusters.size()) return out;

    // Region covered by the split cluster, before splitting.
    int bin_lo = cfg_.bins, bin_hi = -1;
    for (const auto& m : clusters[best].members) {
        bin_lo = std::min(bin_lo, bin_of(m.length));
        bin_hi = std::max(bin_hi, bin_of(m.length));
    }
    apply_split(clusters, best, next_cluster_id, out);
    for (int b = bin_lo; b <= bin_hi; ++b)
        p_[static_cast<std::size_t>(b)] = q_[static_cast<std::size_t>(b)];
    out.cluster_id = cluster_holding(clusters, member.app_id);
    return out;
}

void DistThresholdUpdater::on_cluster_removed(std::int64_t) {}

void DistThresholdUpdater::on_member_removed(std::int64_t, double length) {
    auto& bin = q_[static_cast<std::size_t>(bin_of(length))];
    if (bin > 0) bin -= 1;
}

// ---- online K-means ----

void OnlineKMeansUpdater::rebuild(std::span<const Cluster> clusters) {
    centers_.clear();
    for (const auto& c : clusters) centers_.push_back({c.id, c.centroid});
    target_k_ = static_cast<int>(std::max<std::size_t>(centers_.size(), 1));

    // w* = min pairwise squared center distance / 2; degenerate center sets
    // fall back to the two closest distinct member lengths.
    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers_.size(); ++i)
        for (std::size_t j = i + 1; j < centers_.size(); ++j) {
            double d = centers_[i].value - centers_[j].value;
            if (d != 0) min_sq = std::min(min_sq, d * d);
        }
    if (!std::isfinite(min_sq)) {
        std::vector<double> lengths;
        for (const auto& c : clusters)
            for (const auto& m : c.members) lengths.push_back(m.length);
        std::sort(lengths.begin(), lengths.end());
        for (std::size_t i = 1; i < lengths.size(); ++i) {
            double d = lengths[i] - lengths[i - 1];
            if (d != 0) min_sq = std::min(min_sq, d * d);
        }
    }
    w_star_ = std::isfinite(min_sq) ? min_sq / 2.0 : 1.0;
    epoch_ = 1;
    additions_ = 0;
    facility_ = w_star_ / static_cast<double>(target_k_);
    points_ = 0;
}

InsertOutcome OnlineKMeansUpdater::insert(std::vector<Cluster>& clusters, ClusterMember member,
                                          std::int64_t& next_cluster_id, Rng& rng) {
    if (centers_.empty()) throw std::logic_error("online K-means used before initialization");
    InsertOutcome out;
    points_ += 1;

    std::size_t nearest = 0;
    double d_sq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        double d = member.length - centers_[i].value;
        if (d * d < d_sq) {
            d_sq = d * d;
            nearest = i;
        }
    }

    double p = facility_ > 0 ? std::min(d_sq / facility_, 1.0) : (d_sq > 0 ? 1.0 : 0.0);
    if (rng.bernoulli(p)) {
        Cluster fresh;
        fresh.id = next_cluster_id++;
        fresh.members.push_back(member);
        fresh.refresh();
        clusters.push_back(fresh);
        centers_.push_back({fresh.id, member.length});
        out.cluster_id = fresh.id;
        out.layout_changed = true;

        additions_ += 1;
        double limit =
            3.0 * target_k_ * (1.0 + std::log(static_cast<double>(std::max(points_, 1L))));
        if (additions_ >= limit) {
            epoch_ += 1;
            additions_ = 0;
            facility_ *= 2.0;
        }

        // Retire the previously closest center if nothing is assigned to it.
        std::int64_t prev = centers_[nearest].cluster_id;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (clusters[i].id == prev && clusters[i].members.empty()) {
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(i));
                on_cluster_removed(prev);
                break;
            }
        }
        return out;
    }

    for (auto& c : clusters) {
        if (c.id == centers_[nearest].cluster_id) {
            c.members.push_back(member);
            double total = 0;
            for (const auto& m : c.members) total += m.length;
            c.time_unit = total / static_cast<double>(c.members.size());
            // centroid stays pinned to the center value
            c.centroid = centers_[nearest].value;
            out.cluster_id = c.id;
            return out;
        }
    }
    throw std::logic_error("center without a backing cluster");
}

void OnlineKMeansUpdater::on_cluster_removed(std::int64_t cluster_id) {
    std::erase_if(centers_, [&](const Center& c) { return c.cluster_id == cluster_id; });
}

void OnlineKMeansUpdater::on_member_removed(std::int64_t, double) {}

void OnlineKMeansUpdater::restore_center(Cluster& c) const {
    for (const auto& ctr : centers_) {
        if (ctr.cluster_id == c.id) {
            c.centroid = ctr.value;
            return;
        }
    }
}

// ---- shared exit path ----

RemovalResult remove_member(std::vector<Cluster>& clusters, std::int64_t app_id) {
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        auto& members = clusters[i].members;
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (members[j].app_id != app_id) continue;
            RemovalResult r;
            r.cluster_id = clusters[i].id;
            r.length = members[j].length;
            members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
            if (members.empty()) {
                r.cluster_deleted = true;
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                clusters[i].refresh();
            }
            return r;
        }
    }
    throw std::invalid_argument("application not found in any cluster");
}

}  // namespace dpsac
