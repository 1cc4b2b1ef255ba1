#pragma once
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dpsac {

// Platform parameters (defaults follow the Intrepid-derived setup).
struct SystemConfig {
    int pfs_bandwidth = 100;          // B, GB/s, aggregate PFS bandwidth
    int buffer_size = 300;            // S, GB, burst-buffer capacity
    int total_nodes = 40960;
    double node_peak_bandwidth = 1.0; // GB/s per compute node
};

// Static description of one periodic, write-intensive application.
struct ApplicationSpec {
    std::string name;
    int bandwidth = 0;     // B_i, GB/s, peak transfer rate of its nodes
    double period = 0;     // T_i, s
    double io_time = 0;    // checkpoint-write length, s
    int num_instances = 1; // N_i
    int nodes = 0;         // beta_i

    double io_probability() const { return io_time / period; }   // P_i
    double compute_work() const { return period - io_time; }     // W_i, s
    double io_volume() const { return io_time * bandwidth; }     // IO_i, GB per instance
    double dedicated_efficiency() const { return compute_work() / period; }  // rho_i
};

// Validates invariants (0 < io_time < period, positive bandwidth/counts).
ApplicationSpec make_application(std::string name, int bandwidth, double period,
                                 double io_time, int num_instances, int nodes);

ApplicationSpec with_instances(ApplicationSpec spec, int num_instances);

// io_time / period; rejects degenerate phase lengths.
double derive_probability(double io_time, double period);

// The four APEX workflows: EAP, LAP, Silverton, VPIC.
std::vector<ApplicationSpec> apex_catalog(double node_peak_bandwidth = 1.0);

// Stretches the I/O phase by `factor`, keeping compute work fixed; the period
// follows (T' = W + factor * io_time) and the name gains the factor suffix.
ApplicationSpec scale_application(const ApplicationSpec& spec, double factor);

// Mean io_time: the discretization quantum for the probabilistic model.
double time_unit(std::span<const ApplicationSpec> apps);

struct ScenarioSpec {
    struct Entry {
        ApplicationSpec app;
        int count = 1;
    };
    struct PeriodicJoin {
        ApplicationSpec app;
        double join_period = 0;    // s between arrivals
        int instances_per_join = 1;
    };

    std::string name;
    std::vector<Entry> initial_batch;
    std::vector<PeriodicJoin> periodic_joins;
    // Join admission cutoff in seconds; empty means run-to-completion with no
    // further admissions (only meaningful when periodic_joins is non-empty).
    std::optional<double> horizon;

    int application_count() const;        // K_A over the initial batch
    double total_expected_load() const;   // sum P_i * B_i over the initial batch, GB/s
};

// Builtin scenarios: "set1".."set10", "batch", "dynamic".
ScenarioSpec build_scenario(const std::string& id);
std::vector<std::string> builtin_scenarios();

}  // namespace dpsac
