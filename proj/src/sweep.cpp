#include "dpsac/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpsac {

std::string csv_header() {
    return "scenario,scheduler,updater,strategy,gamma,seed,syseff,dilation,wall_ms";
}

namespace {

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::string csv_line(const CsvRow& r) {
    std::ostringstream out;
    out << r.scenario << ',' << r.scheduler << ',' << r.updater << ',' << r.strategy << ','
        << fmt(r.gamma, "%g") << ',' << r.seed << ',' << fmt(r.syseff, "%.6f") << ','
        << fmt(r.dilation, "%.6f") << ',' << r.wall_ms;
    return out.str();
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << csv_header() << '\n';
    for (const auto& r : rows) out << csv_line(r) << '\n';
}

std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 9) throw std::runtime_error("malformed csv row: " + line);
        CsvRow r;
        r.scenario = fields[0];
        r.scheduler = fields[1];
        r.updater = fields[2];
        r.strategy = fields[3];
        r.gamma = std::stod(fields[4]);
        r.seed = fields[5];
        r.syseff = std::stod(fields[6]);
        r.dilation = std::stod(fields[7]);
        r.wall_ms = std::stol(fields[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::uint64_t> seeds_for(int repeats, std::optional<std::uint64_t> base) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < repeats; ++i)
        seeds.push_back(base ? *base + static_cast<std::uint64_t>(i)
                             : static_cast<std::uint64_t>(i + 1));
    return seeds;
}

SweepResult run_repeated(const CliConfig& cfg, const ScenarioSpec& scenario) {
    SweepResult result;
    StrategyConfig strategy = parse_strategy(cfg.strategy);
    RunConfig rc;
    rc.scenario = scenario;
    rc.system = cfg.system;
    rc.scheduler = parse_scheduler(cfg.scheduler);
    rc.updater = parse_updater(cfg.updater);
    rc.strategy = strategy;
    rc.overrides.k_c = cfg.k_c;
    rc.overrides.drift_threshold = cfg.drift_threshold;
    rc.overrides.bins = cfg.bins;
    rc.overrides.literal_buffer_test = cfg.literal_buffer_test;

    double eff_total = 0, dil_total = 0;
    long wall_total = 0;
    auto seeds = seeds_for(cfg.repeats, cfg.seed);
    for (std::uint64_t seed : seeds) {
        rc.seed = seed;
        auto t0 = std::chrono::steady_clock::now();
        MetricsReport report = run(rc);
        auto t1 = std::chrono::steady_clock::now();
        long wall = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

        CsvRow row;
        row.scenario = scenario.name;
        row.scheduler = cfg.scheduler;
        row.updater = cfg.updater;
        row.strategy = strategy_name(strategy);
        row.gamma = strategy.gamma;
        row.seed = std::to_string(seed);
        row.syseff = report.system_efficiency;
        row.dilation = report.dilation;
        row.wall_ms = wall;
        result.rows.push_back(row);
        result.reports.push_back(std::move(report));

        eff_total += row.syseff;
        dil_total += row.dilation;
        wall_total += wall;
    }
    CsvRow mean = result.rows.back();
    mean.seed = "mean";
    mean.syseff = eff_total / static_cast<double>(seeds.size());
    mean.dilation = dil_total / static_cast<double>(seeds.size());
    mean.wall_ms = wall_total / static_cast<long>(seeds.size());
    result.rows.push_back(mean);
    return result;
}

SweepResult sweep_fig6(const CliConfig& cfg) {
    SweepResult all;
    for (int set = 1; set <= 10; ++set) {
        ScenarioSpec scenario = build_scenario("set" + std::to_string(set));
        for (const char* sched : {"dpsac", "mcios", "bios"}) {
            CliConfig c = cfg;
            c.scheduler = sched;
            c.strategy = "minmax:0.5";
            SweepResult part = run_repeated(c, scenario);
            all.rows.insert(all.rows.end(), part.rows.begin(), part.rows.end());
            all.reports.insert(all.reports.end(),
                               std::make_move_iterator(part.reports.begin()),
                               std::make_move_iterator(part.reports.end()));
        }
    }
    return all;
}

ScenarioSpec dynamic_with_join(const std::string& kind) {
    ScenarioSpec s = build_scenario("dynamic");
    std::erase_if(s.periodic_joins,
                  [&](const ScenarioSpec::PeriodicJoin& j) { return j.app.name != kind; });
    if (s.periodic_joins.empty())
        throw std::invalid_argument("no periodic joiner named " + kind);
    s.name = "dynamic-" + kind;
    return s;
}

SweepResult sweep_fig7(const CliConfig& cfg) {
    SweepResult all;
    for (const char* kind : {"EAP", "LAP5", "Silverton"}) {
        ScenarioSpec scenario = dynamic_with_join(kind);
        for (const char* upd : {"st", "dt", "ok"}) {
            CliConfig c = cfg;
            c.scheduler = "dpsac";
            c.updater = upd;
            c.strategy = "minmax:0.5";
            SweepResult part = run_repeated(c, scenario);
            all.rows.insert(all.rows.end(), part.rows.begin(), part.rows.end());
            all.reports.insert(all.reports.end(),
                               std::make_move_iterator(part.reports.begin()),
                               std::make_move_iterator(part.reports.end()));
        }
    }
    return all;
}

}  // namespace dpsac
