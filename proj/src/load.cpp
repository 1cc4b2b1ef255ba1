#include "dpsac/load.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsac {

namespace {

void check_app(int bandwidth, double probability) {
    if (bandwidth <= 0) throw std::invalid_argument("load bandwidth must be a positive integer");
    if (!(probability >= 0.0 && probability <= 1.0))
        throw std::invalid_argument("transfer probability must lie in [0, 1]");
}

}  // namespace

LoadDistribution::LoadDistribution() : pmf_{1.0} {}

LoadDistribution LoadDistribution::from_apps(std::span<const std::pair<int, double>> apps) {
    LoadDistribution d;
    for (const auto& [b, p] : apps) d = d.add(b, p);
    return d;
}

LoadDistribution LoadDistribution::add(int bandwidth, double probability) const {
    check_app(bandwidth, probability);
    LoadDistribution out;
    out.apps_ = apps_;
    out.apps_.emplace_back(bandwidth, probability);
    out.pmf_.assign(pmf_.size() + bandwidth, 0.0);
    // Dist'(k) = (1-P) Dist(k) + P Dist(k-B)
    for (std::size_t k = 0; k < out.pmf_.size(); ++k) {
        double stay = k < pmf_.size() ? (1.0 - probability) * pmf_[k] : 0.0;
        double move = 0.0;
        if (k >= static_cast<std::size_t>(bandwidth)) {
            std::size_t from = k - bandwidth;
            if (from < pmf_.size()) move = probability * pmf_[from];
        }
        out.pmf_[k] = stay + move;
    }
    return out;
}

LoadDistribution LoadDistribution::remove(int bandwidth, double probability) const {
    check_app(bandwidth, probability);
    auto it = apps_.end();
    for (auto i = apps_.begin(); i != apps_.end(); ++i) {
        if (i->first == bandwidth && std::abs(i->second - probability) <= 1e-12) {
            it = i;
            break;
        }
    }
    if (it == apps_.end())
        throw std::invalid_argument("application is not a contributor to this distribution");

    std::vector<std::pair<int, double>> rest(apps_.begin(), it);
    rest.insert(rest.end(), it + 1, apps_.end());
    if (1.0 - probability < 1e-6) {
        // Deconvolution is ill-conditioned near P = 1; rebuild instead.
        return from_apps(rest);
    }

    LoadDistribution out;
    out.apps_ = std::move(rest);
    out.pmf_.assign(pmf_.size() - bandwidth, 0.0);
    double inv = 1.0 / (1.0 - probability);
    for (std::size_t k = 0; k < out.pmf_.size(); ++k) {
        double prev = k >= static_cast<std::size_t>(bandwidth)
                          ? out.pmf_[k - bandwidth]
                          : 0.0;
        out.pmf_[k] = (pmf_[k] - probability * prev) * inv;
        if (out.pmf_[k] < 0 && out.pmf_[k] > -1e-12) out.pmf_[k] = 0;
    }
    return out;
}

double LoadDistribution::tail(double threshold) const {
    if (threshold <= 0) return 1.0;
    auto lo = static_cast<long long>(std::ceil(threshold - 1e-9));
    if (lo <= 0) return 1.0;
    if (lo > max_load()) return 0.0;
    double total = 0;
    for (std::size_t k = static_cast<std::size_t>(lo); k < pmf_.size(); ++k) total += pmf_[k];
    return total;
}

double LoadDistribution::mean() const {
    double m = 0;
    for (std::size_t k = 1; k < pmf_.size(); ++k) m += static_cast<double>(k) * pmf_[k];
    return m;
}

std::vector<std::vector<double>> transition_matrix(const LoadDistribution& dist,
                                                   int capacity, int drain) {
    if (capacity < 0 || drain < 0)
        throw std::invalid_argument("capacity and drain must be non-negative");
    const auto& pmf = dist.pmf();
    std::vector<std::vector<double>> t(capacity + 1, std::vector<double>(capacity + 1, 0.0));
    for (int m = 0; m <= capacity; ++m) {
        for (std::size_t k = 0; k < pmf.size(); ++k) {
            long long n = static_cast<long long>(m) + static_cast<long long>(k) - drain;
            if (n < 0) n = 0;                  // excess drain is unused
            if (n > capacity) n = capacity;    // congestion state
            t[m][static_cast<std::size_t>(n)] += pmf[k];
        }
    }
    return t;
}

double p_full(const LoadDistribution& dist, double occupancy, int capacity, int drain) {
    if (!(occupancy >= 0.0) || occupancy > static_cast<double>(capacity) + 1e-9)
        throw std::out_of_range("occupancy outside [0, capacity]");
    return dist.tail(static_cast<double>(capacity) - occupancy + static_cast<double>(drain));
}

}  // namespace dpsac
