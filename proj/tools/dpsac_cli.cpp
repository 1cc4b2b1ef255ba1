#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dpsac/chart.hpp"
#include "dpsac/scenario_io.hpp"
#include "dpsac/sim.hpp"
#include "dpsac/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void add_common_flags(CLI::App* cmd, dpsac::CliConfig& cfg, std::string& config_path,
                      std::int64_t& seed_flag) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    cmd->add_option("--scenario", cfg.scenario, "builtin scenario name or scenario file");
    cmd->add_option("--scheduler", cfg.scheduler, "dpsac | mcios | bios");
    cmd->add_option("--updater", cfg.updater, "st | dt | ok");
    cmd->add_option("--strategy", cfg.strategy, "mindilation | maxsyseff | minmax:<gamma>");
    cmd->add_option("--repeats", cfg.repeats, "seeded runs per configuration");
    cmd->add_option("--seed", seed_flag, "base seed (seed, seed+1, ...); default 1..repeats");
    cmd->add_option("--out-dir", cfg.out_dir, "output directory");
    cmd->add_option("--kc", cfg.k_c, "max cluster count (1 forces a single cluster)");
    cmd->add_option("--drift-threshold", cfg.drift_threshold, "updater drift bound");
    cmd->add_option("--bins", cfg.bins, "histogram bins for the dt updater");
    cmd->add_flag("--literal-line15", cfg.literal_buffer_test,
                  "use the printed buffer-fit inequality instead of the corrected one");
}

void finalize_config(dpsac::CliConfig& cfg, const std::string& config_path,
                     std::int64_t seed_flag, CLI::App* cmd) {
    if (!config_path.empty()) {
        dpsac::CliConfig file_cfg;
        dpsac::load_config_file(file_cfg, config_path);
        // flags that were not given fall back to the file's values
        if (cmd->count("--scenario") == 0) cfg.scenario = file_cfg.scenario;
        if (cmd->count("--scheduler") == 0) cfg.scheduler = file_cfg.scheduler;
        if (cmd->count("--updater") == 0) cfg.updater = file_cfg.updater;
        if (cmd->count("--strategy") == 0) cfg.strategy = file_cfg.strategy;
        if (cmd->count("--repeats") == 0) cfg.repeats = file_cfg.repeats;
        if (cmd->count("--seed") == 0 && file_cfg.seed) cfg.seed = file_cfg.seed;
        if (cmd->count("--out-dir") == 0) cfg.out_dir = file_cfg.out_dir;
        if (cmd->count("--kc") == 0) cfg.k_c = file_cfg.k_c;
        if (cmd->count("--drift-threshold") == 0) cfg.drift_threshold = file_cfg.drift_threshold;
        if (cmd->count("--bins") == 0) cfg.bins = file_cfg.bins;
        if (cmd->count("--literal-line15") == 0)
            cfg.literal_buffer_test = file_cfg.literal_buffer_test;
        cfg.system = file_cfg.system;
    }
    if (seed_flag >= 0) cfg.seed = static_cast<std::uint64_t>(seed_flag);
    if (const char* env = std::getenv("DPSAC_OUT_DIR"); env && cmd->count("--out-dir") == 0)
        cfg.out_dir = env;
    if (cfg.repeats < 1) throw CLI::ValidationError("--repeats", "must be >= 1");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DPSAC burst-buffer I/O scheduling simulator"};
    app.require_subcommand(1);

    dpsac::CliConfig cfg;
    std::string config_path;
    std::int64_t seed_flag = -1;

    auto* cmd_run = app.add_subcommand("run", "run one configuration over repeated seeds");
    add_common_flags(cmd_run, cfg, config_path, seed_flag);
    std::string out_csv = "run.csv";
    cmd_run->add_option("--out", out_csv, "CSV file name inside the output directory");

    auto* cmd_fig6 = app.add_subcommand("sweep-fig6", "congestion sweep: sets 1-10 x schedulers");
    add_common_flags(cmd_fig6, cfg, config_path, seed_flag);

    auto* cmd_fig7 = app.add_subcommand("sweep-fig7", "dynamic sweep: updaters x incoming kinds");
    add_common_flags(cmd_fig7, cfg, config_path, seed_flag);

    auto* cmd_list = app.add_subcommand("list-scenarios", "print the builtin scenarios");

    auto* cmd_validate = app.add_subcommand("validate-config", "parse and echo a config/scenario");
    std::string validate_path;
    cmd_validate->add_option("file", validate_path, "config or scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_list->parsed()) {
            for (const auto& name : dpsac::builtin_scenarios()) {
                auto s = dpsac::build_scenario(name);
                std::cout << name << ": " << s.application_count() << " applications";
                if (!s.periodic_joins.empty())
                    std::cout << ", " << s.periodic_joins.size() << " periodic joiners";
                std::cout << "\n";
            }
            return kExitOk;
        }

        if (cmd_validate->parsed()) {
            std::ifstream probe(validate_path);
            if (!probe) throw std::invalid_argument("cannot open " + validate_path);
            std::stringstream buf;
            buf << probe.rdbuf();
            std::string text = buf.str();
            try {
                auto scenario = dpsac::parse_scenario_json(text);
                std::cout << dpsac::scenario_to_json(scenario) << "\n";
            } catch (const std::exception&) {
                dpsac::CliConfig parsed;
                dpsac::apply_config_json(parsed, text);
                std::cout << "config ok: scenario=" << parsed.scenario
                          << " scheduler=" << parsed.scheduler << " updater=" << parsed.updater
                          << " strategy=" << parsed.strategy << " repeats=" << parsed.repeats
                          << "\n";
            }
            return kExitOk;
        }

        CLI::App* active = cmd_run->parsed() ? cmd_run
                          : cmd_fig6->parsed() ? static_cast<CLI::App*>(cmd_fig6)
                                               : static_cast<CLI::App*>(cmd_fig7);
        finalize_config(cfg, config_path, seed_flag, active);

        // validate selectors before any run starts
        dpsac::parse_scheduler(cfg.scheduler);
        dpsac::parse_updater(cfg.updater);
        dpsac::parse_strategy(cfg.strategy);

        std::filesystem::create_directories(cfg.out_dir);

        if (cmd_run->parsed()) {
            dpsac::ScenarioSpec scenario = dpsac::resolve_scenario(cfg.scenario);
            try {
                auto result = dpsac::run_repeated(cfg, scenario);
                std::string path = cfg.out_dir + "/" + out_csv;
                dpsac::write_csv(path, result.rows);
                for (const auto& row : result.rows) std::cout << dpsac::csv_line(row) << "\n";
                std::cout << "wrote " << path << "\n";
            } catch (const dpsac::HorizonError& e) {
                std::cerr << "runtime failure in scenario " << scenario.name << ": " << e.what()
                          << "\n";
                return kExitRuntime;
            }
            return kExitOk;
        }

        const bool fig6 = cmd_fig6->parsed();
        try {
            auto result = fig6 ? dpsac::sweep_fig6(cfg) : dpsac::sweep_fig7(cfg);
            std::string prefix = fig6 ? "fig6" : "fig7";
            std::string csv_path = cfg.out_dir + "/" + prefix + ".csv";
            dpsac::write_csv(csv_path, result.rows);
            dpsac::emit_charts_from_csv(csv_path, cfg.out_dir, prefix,
                                        fig6 ? "scheduler" : "updater");
            std::cout << "wrote " << csv_path << " and charts\n";
        } catch (const dpsac::HorizonError& e) {
            std::cerr << "runtime failure: " << e.what() << "\n";
            return kExitRuntime;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
