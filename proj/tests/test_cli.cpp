#include <doctest.h>

#include <fstream>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "dpsac/chart.hpp"
#include "dpsac/scenario_io.hpp"
#include "dpsac/sweep.hpp"

using namespace dpsac;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "dpsac_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("scenario json round trip") {
    auto s = build_scenario("dynamic");
    auto text = scenario_to_json(s);
    auto back = parse_scenario_json(text);
    CHECK(back.name == s.name);
    REQUIRE(back.initial_batch.size() == s.initial_batch.size());
    for (std::size_t i = 0; i < s.initial_batch.size(); ++i) {
        CHECK(back.initial_batch[i].app.name == s.initial_batch[i].app.name);
        CHECK(back.initial_batch[i].app.period ==
              doctest::Approx(s.initial_batch[i].app.period));
        CHECK(back.initial_batch[i].count == s.initial_batch[i].count);
    }
    REQUIRE(back.periodic_joins.size() == 3);
    CHECK(back.periodic_joins[0].join_period == doctest::Approx(34026));
    REQUIRE(back.horizon.has_value());
}

TEST_CASE("scenario json accepts catalog references") {
    const char* text = R"({
        "name": "mini",
        "initial_batch": [
            {"catalog": "EAP", "count": 2},
            {"catalog": "LAP", "scale": 5, "instances": 2},
            {"name": "custom", "bandwidth": 40, "period": 1000, "io_time": 50, "instances": 3}
        ],
        "periodic_joins": [{"catalog": "Silverton", "period": 30010, "instances": 1}],
        "horizon": 50000
    })";
    auto s = parse_scenario_json(text);
    CHECK(s.application_count() == 4);
    CHECK(s.initial_batch[1].app.name == "LAP5");
    CHECK(s.initial_batch[1].app.io_time == doctest::Approx(125));
    CHECK(s.initial_batch[1].app.num_instances == 2);
    CHECK(s.initial_batch[2].app.nodes == 40);
    REQUIRE(s.periodic_joins.size() == 1);

    CHECK_THROWS_AS(parse_scenario_json(R"({"initial_batch": []})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_json(R"({
        "initial_batch": [{"catalog": "EAP"}],
        "periodic_joins": [{"catalog": "EAP", "period": 10}]
    })"),
                    std::invalid_argument);  // joins without a horizon
}

TEST_CASE("config json applies and validates") {
    CliConfig cfg;
    apply_config_json(cfg, R"({
        "scenario": "set3", "scheduler": "mcios", "updater": "ok",
        "strategy": "mindilation", "repeats": 2, "seed": 9,
        "kc": 4, "drift_threshold": 0.2, "bins": 10, "literal_line15": true
    })");
    CHECK(cfg.scenario == "set3");
    CHECK(cfg.scheduler == "mcios");
    CHECK(cfg.updater == "ok");
    CHECK(cfg.repeats == 2);
    REQUIRE(cfg.seed.has_value());
    CHECK(*cfg.seed == 9);
    CHECK(cfg.k_c == 4);
    CHECK(cfg.literal_buffer_test);

    CliConfig bad;
    CHECK_THROWS_AS(apply_config_json(bad, R"({"repeats": 0})"), std::invalid_argument);
}

TEST_CASE("csv rows are stable and readable back") {
    CliConfig cfg;
    cfg.scenario = "set5";
    cfg.repeats = 2;
    cfg.seed = 42;
    auto result = run_repeated(cfg, build_scenario("set5"));
    REQUIRE(result.rows.size() == 3);  // 2 runs + mean
    CHECK(result.rows[0].seed == "42");
    CHECK(result.rows[1].seed == "43");
    CHECK(result.rows[2].seed == "mean");

    auto dir = temp_dir();
    auto path = (dir / "rows.csv").string();
    write_csv(path, result.rows);
    auto back = read_csv(path);
    REQUIRE(back.size() == 3);
    CHECK(back[0].syseff == doctest::Approx(result.rows[0].syseff));
    CHECK(back[2].seed == "mean");
    CHECK(slurp(path).rfind(csv_header(), 0) == 0);

    // equal seeds come out bit-identical on the semantic columns
    auto again = run_repeated(cfg, build_scenario("set5"));
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        CHECK(csv_line(result.rows[i]).substr(0, csv_line(result.rows[i]).rfind(',')) ==
              csv_line(again.rows[i]).substr(0, csv_line(again.rows[i]).rfind(',')));
    }
}

TEST_CASE("charts regenerate byte-identically from the csv") {
    CliConfig cfg;
    cfg.repeats = 1;
    cfg.seed = 1;
    auto r1 = run_repeated(cfg, build_scenario("set9"));
    CliConfig cfg2 = cfg;
    cfg2.scheduler = "bios";
    auto r2 = run_repeated(cfg2, build_scenario("set9"));
    std::vector<CsvRow> rows = r1.rows;
    rows.insert(rows.end(), r2.rows.begin(), r2.rows.end());

    auto dir = temp_dir();
    auto csv_path = (dir / "mini.csv").string();
    write_csv(csv_path, rows);
    emit_charts_from_csv(csv_path, dir.string(), "mini", "scheduler");
    auto first = slurp((dir / "mini_efficiency.svg").string());
    auto first_dil = slurp((dir / "mini_dilation.svg").string());
    CHECK(!first.empty());
    emit_charts_from_csv(csv_path, dir.string(), "mini", "scheduler");
    CHECK(slurp((dir / "mini_efficiency.svg").string()) == first);
    CHECK(slurp((dir / "mini_dilation.svg").string()) == first_dil);
}

TEST_CASE("dynamic_with_join filters the joiners") {
    auto s = dynamic_with_join("LAP5");
    CHECK(s.name == "dynamic-LAP5");
    REQUIRE(s.periodic_joins.size() == 1);
    CHECK(s.periodic_joins[0].app.name == "LAP5");
    CHECK_THROWS_AS(dynamic_with_join("nope"), std::invalid_argument);
}

TEST_CASE("seeds default to 1..repeats") {
    auto def = seeds_for(3, std::nullopt);
    CHECK(def == std::vector<std::uint64_t>{1, 2, 3});
    auto based = seeds_for(2, 40);
    CHECK(based == std::vector<std::uint64_t>{40, 41});
}
