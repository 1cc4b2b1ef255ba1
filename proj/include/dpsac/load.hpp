#pragma once
#include <span>
#include <utility>
#include <vector>

namespace dpsac {

// Exact law of the instantaneous I/O load X = sum B_i * X_i over independent
// Bernoulli(P_i) indicators, indexed in integer GB/s units.
class LoadDistribution {
public:
    LoadDistribution();  // point mass at load 0, no applications

    static LoadDistribution from_apps(std::span<const std::pair<int, double>> apps);

    LoadDistribution add(int bandwidth, double probability) const;
    // Deconvolves one application back out; the app must be a contributor.
    LoadDistribution remove(int bandwidth, double probability) const;

    // P(load >= ceil(threshold)); thresholds <= 0 give 1, above support give 0.
    double tail(double threshold) const;
    double mean() const;

    const std::vector<double>& pmf() const { return pmf_; }
    const std::vector<std::pair<int, double>>& apps() const { return apps_; }
    int max_load() const { return static_cast<int>(pmf_.size()) - 1; }

private:
    std::vector<double> pmf_;
    std::vector<std::pair<int, double>> apps_;  // (B_i, P_i)
};

// One-step buffer occupancy chain over states 0..capacity (GB). Mass mapping
// below empty accumulates at 0, mass mapping above capacity at the full state.
std::vector<std::vector<double>> transition_matrix(const LoadDistribution& dist,
                                                   int capacity, int drain);

// Probability of reaching the full state from occupancy L in one time unit.
double p_full(const LoadDistribution& dist, double occupancy, int capacity, int drain);

}  // namespace dpsac
