#include "dpsac/model.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace dpsac {

ApplicationSpec make_application(std::string name, int bandwidth, double period,
                                 double io_time, int num_instances, int nodes) {
    if (bandwidth <= 0) throw std::invalid_argument("application bandwidth must be positive");
    derive_probability(io_time, period);  // validates 0 < io_time < period
    if (num_instances < 1) throw std::invalid_argument("instance count must be >= 1");
    if (nodes <= 0) throw std::invalid_argument("node count must be positive");
    return ApplicationSpec{std::move(name), bandwidth, period, io_time, num_instances, nodes};
}

ApplicationSpec with_instances(ApplicationSpec spec, int num_instances) {
    if (num_instances < 1) throw std::invalid_argument("instance count must be >= 1");
    spec.num_instances = num_instances;
    return spec;
}

double derive_probability(double io_time, double period) {
    if (!(io_time > 0)) throw std::invalid_argument("io_time must be positive");
    if (!(io_time < period)) throw std::invalid_argument("io_time must be shorter than the period");
    return io_time / period;
}

std::vector<ApplicationSpec> apex_catalog(double node_peak_bandwidth) {
    if (!(node_peak_bandwidth > 0)) throw std::invalid_argument("node peak bandwidth must be positive");
    auto nodes_for = [&](int bw) {
        return static_cast<int>(std::lround(bw / node_peak_bandwidth));
    };
    std::vector<ApplicationSpec> cat;
    cat.push_back(make_application("EAP", 160, 5671, 20, 13, nodes_for(160)));
    cat.push_back(make_application("LAP", 80, 12682, 25, 4, nodes_for(80)));
    cat.push_back(make_application("Silverton", 160, 15005, 280, 2, nodes_for(160)));
    cat.push_back(make_application("VPIC", 160, 4483, 23.4, 1, nodes_for(160)));
    return cat;
}

namespace {

std::string format_factor(double factor) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", factor);
    return buf;
}

}  // namespace

ApplicationSpec scale_application(const ApplicationSpec& spec, double factor) {
    if (!(factor > 0)) throw std::invalid_argument("scale factor must be positive");
    if (factor == 1.0) return spec;
    double work = spec.compute_work();
    double io = spec.io_time * factor;
    double period = work + io;
    if (!(io < period)) throw std::invalid_argument("scaled io_time must stay below the period");
    return make_application(spec.name + format_factor(factor), spec.bandwidth, period, io,
                            spec.num_instances, spec.nodes);
}

double time_unit(std::span<const ApplicationSpec> apps) {
    if (apps.empty()) throw std::invalid_argument("time_unit of an empty application list");
    double total = 0;
    for (const auto& a : apps) total += a.io_time;
    return total / static_cast<double>(apps.size());
}

int ScenarioSpec::application_count() const {
    int n = 0;
    for (const auto& e : initial_batch) n += e.count;
    return n;
}

double ScenarioSpec::total_expected_load() const {
    double teio = 0;
    for (const auto& e : initial_batch)
        teio += e.count * e.app.io_probability() * e.app.bandwidth;
    return teio;
}

namespace {

struct CatalogView {
    std::vector<ApplicationSpec> base = apex_catalog();

    const ApplicationSpec& get(const std::string& name) const {
        for (const auto& a : base)
            if (a.name == name) return a;
        throw std::invalid_argument("unknown catalog application: " + name);
    }

    ApplicationSpec scaled(const std::string& name, double factor) const {
        return scale_application(get(name), factor);
    }
};

// Application mix per congestion set, row = (spec, count).
ScenarioSpec make_set(const CatalogView& cat, int set_id) {
    using Row = std::pair<ApplicationSpec, int>;
    std::vector<Row> rows;
    auto add = [&](ApplicationSpec spec, int count) {
        if (count > 0) rows.emplace_back(std::move(spec), count);
    };

    const int eap[10]          = {0, 0, 0, 0, 1, 0, 0, 0, 1, 0};
    const int lap[10]          = {10, 8, 6, 4, 2, 3, 2, 2, 0, 1};
    const int vpic[10]         = {0, 0, 0, 0, 0, 0, 1, 0, 1, 0};
    const int eap5[10]         = {0, 0, 0, 1, 0, 0, 1, 0, 0, 1};
    const int lap5[10]         = {2, 1, 1, 1, 1, 0, 0, 0, 0, 0};
    const int silverton05[10]  = {0, 0, 0, 1, 1, 1, 0, 2, 0, 1};
    const int eap10[10]        = {0, 0, 1, 1, 0, 0, 1, 0, 0, 0};
    const int vpic10[10]       = {0, 1, 0, 1, 1, 0, 0, 1, 0, 0};
    const int silverton[10]    = {1, 0, 0, 1, 1, 1, 0, 0, 1, 0};

    int i = set_id - 1;
    add(cat.get("EAP"), eap[i]);
    add(cat.get("LAP"), lap[i]);
    add(cat.get("VPIC"), vpic[i]);
    add(cat.scaled("EAP", 5), eap5[i]);
    add(cat.scaled("LAP", 5), lap5[i]);
    add(cat.scaled("Silverton", 0.5), silverton05[i]);
    add(cat.scaled("EAP", 10), eap10[i]);
    add(cat.scaled("VPIC", 10), vpic10[i]);
    add(cat.get("Silverton"), silverton[i]);

    ScenarioSpec s;
    s.name = "set" + std::to_string(set_id);
    for (auto& [spec, count] : rows) s.initial_batch.push_back({std::move(spec), count});
    return s;
}

ScenarioSpec make_batch(const CatalogView& cat) {
    ScenarioSpec s;
    s.name = "batch";
    s.initial_batch = {
        {with_instances(cat.get("EAP"), 13), 1},
        {with_instances(cat.get("LAP"), 4), 2},
        {with_instances(cat.scaled("LAP", 5), 2), 1},
        {with_instances(cat.scaled("Silverton", 0.5), 2), 1},
        {with_instances(cat.scaled("VPIC", 10), 1), 1},
        {with_instances(cat.get("Silverton"), 1), 1},
    };
    return s;
}

ScenarioSpec make_dynamic(const CatalogView& cat) {
    ScenarioSpec s = make_batch(cat);
    s.name = "dynamic";
    s.periodic_joins = {
        {with_instances(cat.get("EAP"), 5), 6 * 5671.0, 5},
        {with_instances(cat.scaled("LAP", 5), 2), 3 * 12682.0, 2},
        {with_instances(cat.get("Silverton"), 1), 2 * 15005.0, 1},
    };
    // Admit joiners while the longest initial application is still running
    // (the serial length of the batch); afterwards run to completion.
    double longest = 0;
    for (const auto& e : s.initial_batch)
        longest = std::max(longest, e.app.num_instances * e.app.period);
    s.horizon = longest;
    return s;
}

}  // namespace

ScenarioSpec build_scenario(const std::string& id) {
    CatalogView cat;
    if (id == "batch") return make_batch(cat);
    if (id == "dynamic") return make_dynamic(cat);
    std::string digits = id;
    if (digits.rfind("set", 0) == 0) digits = digits.substr(3);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
        int n = std::stoi(digits);
        if (n >= 1 && n <= 10) return make_set(cat, n);
    }
    throw std::invalid_argument("unknown scenario: " + id);
}

std::vector<std::string> builtin_scenarios() {
    std::vector<std::string> names;
    for (int i = 1; i <= 10; ++i) names.push_back("set" + std::to_string(i));
    names.push_back("batch");
    names.push_back("dynamic");
    return names;
}

}  // namespace dpsac
