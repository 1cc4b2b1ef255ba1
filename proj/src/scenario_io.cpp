#include "dpsac/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dpsac {

namespace {

using nlohmann::json;

ApplicationSpec app_from_json(const json& j) {
    if (j.contains("catalog")) {
        auto cat = apex_catalog();
        const std::string name = j.at("catalog").get<std::string>();
        const ApplicationSpec* base = nullptr;
        for (const auto& a : cat)
            if (a.name == name) base = &a;
        if (!base) throw std::invalid_argument("unknown catalog application: " + name);
        ApplicationSpec spec = *base;
        if (j.contains("scale")) spec = scale_application(spec, j.at("scale").get<double>());
        if (j.contains("instances")) spec = with_instances(spec, j.at("instances").get<int>());
        return spec;
    }
    int bandwidth = j.at("bandwidth").get<int>();
    int nodes = j.contains("nodes") ? j.at("nodes").get<int>() : bandwidth;
    return make_application(j.at("name").get<std::string>(), bandwidth,
                            j.at("period").get<double>(), j.at("io_time").get<double>(),
                            j.contains("instances") ? j.at("instances").get<int>() : 1, nodes);
}

json app_to_json(const ApplicationSpec& a) {
    return json{{"name", a.name},         {"bandwidth", a.bandwidth}, {"period", a.period},
                {"io_time", a.io_time},   {"instances", a.num_instances},
                {"nodes", a.nodes}};
}

}  // namespace

ScenarioSpec parse_scenario_json(const std::string& text) {
    json j = json::parse(text);
    ScenarioSpec s;
    s.name = j.value("name", "custom");
    if (!j.contains("initial_batch") || !j.at("initial_batch").is_array() ||
        j.at("initial_batch").empty())
        throw std::invalid_argument("scenario needs a non-empty initial_batch");
    for (const auto& e : j.at("initial_batch")) {
        ScenarioSpec::Entry entry;
        entry.app = app_from_json(e);
        entry.count = e.value("count", 1);
        if (entry.count < 1) throw std::invalid_argument("entry count must be >= 1");
        s.initial_batch.push_back(std::move(entry));
    }
    for (const auto& e : j.value("periodic_joins", json::array())) {
        ScenarioSpec::PeriodicJoin join;
        join.app = app_from_json(e);
        join.join_period = e.at("period").get<double>();
        if (!(join.join_period > 0)) throw std::invalid_argument("join period must be positive");
        join.instances_per_join = e.value("instances", join.app.num_instances);
        s.periodic_joins.push_back(std::move(join));
    }
    if (j.contains("horizon")) s.horizon = j.at("horizon").get<double>();
    if (!s.periodic_joins.empty() && !s.horizon)
        throw std::invalid_argument("scenarios with periodic joins need a horizon");
    return s;
}

ScenarioSpec load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str());
}

std::string scenario_to_json(const ScenarioSpec& scenario) {
    json j;
    j["name"] = scenario.name;
    j["initial_batch"] = json::array();
    for (const auto& e : scenario.initial_batch) {
        json entry = app_to_json(e.app);
        entry["count"] = e.count;
        j["initial_batch"].push_back(entry);
    }
    if (!scenario.periodic_joins.empty()) {
        j["periodic_joins"] = json::array();
        for (const auto& join : scenario.periodic_joins) {
            json entry = app_to_json(join.app);
            entry["period"] = join.join_period;
            entry["instances"] = join.instances_per_join;
            j["periodic_joins"].push_back(entry);
        }
    }
    if (scenario.horizon) j["horizon"] = *scenario.horizon;
    return j.dump(2);
}

ScenarioSpec resolve_scenario(const std::string& selector) {
    for (const auto& name : builtin_scenarios())
        if (name == selector) return build_scenario(selector);
    if (std::ifstream(selector).good()) return load_scenario_file(selector);
    return build_scenario(selector);  // reports the unknown-name error
}

void apply_config_json(CliConfig& cfg, const std::string& text) {
    json j = json::parse(text);
    cfg.scenario = j.value("scenario", cfg.scenario);
    cfg.scheduler = j.value("scheduler", cfg.scheduler);
    cfg.updater = j.value("updater", cfg.updater);
    cfg.strategy = j.value("strategy", cfg.strategy);
    cfg.repeats = j.value("repeats", cfg.repeats);
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.k_c = j.value("kc", cfg.k_c);
    cfg.drift_threshold = j.value("drift_threshold", cfg.drift_threshold);
    cfg.bins = j.value("bins", cfg.bins);
    cfg.literal_buffer_test = j.value("literal_line15", cfg.literal_buffer_test);
    cfg.system.pfs_bandwidth = j.value("pfs_bandwidth", cfg.system.pfs_bandwidth);
    cfg.system.buffer_size = j.value("buffer_size", cfg.system.buffer_size);
    if (cfg.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
}

void load_config_file(CliConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_json(cfg, buf.str());
}

}  // namespace dpsac
