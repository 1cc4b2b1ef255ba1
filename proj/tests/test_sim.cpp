#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dpsac/sim.hpp"

using namespace dpsac;

namespace {

RunConfig base_config(const std::string& scenario, SchedulerKind sched, std::uint64_t seed) {
    RunConfig cfg;
    cfg.scenario = build_scenario(scenario);
    cfg.scheduler = sched;
    cfg.seed = seed;
    return cfg;
}

void check_invariants(const MetricsReport& r) {
    CHECK(r.invariants.max_conservation_drift <= 1e-6);
    CHECK(r.invariants.max_occupancy_overrun <= 1e-6);
    CHECK(r.invariants.max_cluster_rate_excess <= 1e-9);
    CHECK(r.invariants.max_global_rate_excess <= 1e-9);
    CHECK(r.invariants.max_app_rate_excess <= 1e-9);
    CHECK(r.system_efficiency <= r.efficiency_ceiling + 1e-9);
}

ApplicationRuntime done_app(const ApplicationSpec& spec, std::int64_t id, double release,
                            double finish) {
    ApplicationRuntime a;
    a.id = id;
    a.spec = spec;
    a.release = release;
    a.finish = finish;
    a.instances_done = spec.num_instances;
    a.phase = ApplicationRuntime::Phase::Done;
    return a;
}

}  // namespace

TEST_CASE("efficiency_now") {
    auto cat = apex_catalog();
    ApplicationRuntime app;
    app.spec = cat[0];  // EAP
    app.release = 100;
    app.instances_done = 0;
    CHECK(efficiency_now(app, 100) == doctest::Approx(app.rho()));
    CHECK_THROWS_AS(efficiency_now(app, 99), std::invalid_argument);

    app.instances_done = 1;
    CHECK(efficiency_now(app, 100 + 5671) == doctest::Approx(5651.0 / 5671.0));
    CHECK(efficiency_now(app, 100 + 2 * 5671) == doctest::Approx(app.rho() / 2));

    app.instances_done = app.spec.num_instances;
    double t = 100 + 13 * 5671.0;
    CHECK(efficiency_now(app, t) == doctest::Approx(app.rho()));
}

TEST_CASE("compute_metrics") {
    SystemConfig sys;
    auto cat = apex_catalog();

    SUBCASE("dedicated-speed apps hit the ceiling") {
        std::vector<ApplicationRuntime> apps = {
            done_app(cat[0], 0, 0, 13 * 5671.0),
            done_app(cat[1], 1, 0, 4 * 12682.0),
        };
        auto r = compute_metrics(apps, sys);
        CHECK(r.system_efficiency == doctest::Approx(r.efficiency_ceiling));
        CHECK(r.dilation == doctest::Approx(1.0));
    }
    SUBCASE("one delayed app dominates dilation") {
        std::vector<ApplicationRuntime> apps = {
            done_app(cat[0], 0, 0, 13 * 5671.0),
            done_app(cat[1], 1, 0, 2 * 4 * 12682.0),  // half speed
        };
        auto r = compute_metrics(apps, sys);
        CHECK(r.dilation == doctest::Approx(2.0));
    }
    SUBCASE("single application reduces to its own efficiency") {
        std::vector<ApplicationRuntime> apps = {done_app(cat[0], 0, 0, 13 * 5671.0)};
        auto r = compute_metrics(apps, sys);
        CHECK(r.system_efficiency == doctest::Approx(5651.0 / 5671.0));
    }
    SUBCASE("unfinished applications are rejected") {
        std::vector<ApplicationRuntime> apps = {done_app(cat[0], 0, 0, 13 * 5671.0)};
        apps[0].phase = ApplicationRuntime::Phase::Io;
        CHECK_THROWS_AS(compute_metrics(apps, sys), std::invalid_argument);
    }
}

TEST_CASE("dedicated mode: a single application is barely disturbed") {
    ScenarioSpec solo;
    solo.name = "solo-eap";
    solo.initial_batch = {{apex_catalog()[0], 1}};
    for (auto sched : {SchedulerKind::Dpsac, SchedulerKind::Mcios, SchedulerKind::Bios}) {
        RunConfig cfg;
        cfg.scenario = solo;
        cfg.scheduler = sched;
        cfg.seed = 3;
        auto r = run(cfg);
        CAPTURE(scheduler_name(sched));
        CHECK(r.dilation <= 1.01);
        CHECK(r.system_efficiency >= 0.99 * (5651.0 / 5671.0));
        check_invariants(r);
    }
}

TEST_CASE("equal seeds give bit-identical reports") {
    for (auto sched : {SchedulerKind::Dpsac, SchedulerKind::Mcios, SchedulerKind::Bios}) {
        auto a = run(base_config("set5", sched, 42));
        auto b = run(base_config("set5", sched, 42));
        CHECK(a.system_efficiency == b.system_efficiency);
        CHECK(a.dilation == b.dilation);
        REQUIRE(a.per_app.size() == b.per_app.size());
        for (std::size_t i = 0; i < a.per_app.size(); ++i) {
            CHECK(a.per_app[i].finish == b.per_app[i].finish);
            CHECK(a.per_app[i].efficiency == b.per_app[i].efficiency);
        }
    }
}

TEST_CASE("run invariants hold on congested and relaxed sets") {
    for (const char* scenario : {"set1", "set5", "set10"}) {
        for (auto sched : {SchedulerKind::Dpsac, SchedulerKind::Mcios, SchedulerKind::Bios}) {
            CAPTURE(scenario);
            CAPTURE(scheduler_name(sched));
            auto r = run(base_config(scenario, sched, 7));
            check_invariants(r);
            CHECK(r.dilation >= 1.0);
            CHECK(r.system_efficiency > 0.0);
            CHECK(r.per_app.size() == build_scenario(scenario).application_count());
        }
    }
}

TEST_CASE("single-cluster dpsac reproduces mcios tick for tick") {
    auto cfg_d = base_config("set5", SchedulerKind::Dpsac, 11);
    cfg_d.overrides.k_c = 1;
    cfg_d.record_trace = true;
    auto cfg_m = base_config("set5", SchedulerKind::Mcios, 11);
    cfg_m.record_trace = true;
    auto d = run(cfg_d);
    auto m = run(cfg_m);
    CHECK(d.system_efficiency == m.system_efficiency);
    REQUIRE(d.trace.size() == m.trace.size());
    for (std::size_t i = 0; i < d.trace.size(); ++i) {
        CHECK(d.trace[i].time == m.trace[i].time);
        CHECK(d.trace[i].drain == m.trace[i].drain);
        REQUIRE(d.trace[i].apps.size() == m.trace[i].apps.size());
        for (std::size_t j = 0; j < d.trace[i].apps.size(); ++j) {
            CHECK(d.trace[i].apps[j].app_id == m.trace[i].apps[j].app_id);
            CHECK(d.trace[i].apps[j].pfs_rate == m.trace[i].apps[j].pfs_rate);
            CHECK(d.trace[i].apps[j].buffer_rate == m.trace[i].apps[j].buffer_rate);
        }
    }
}

TEST_CASE("dynamic scenario completes under every updater") {
    for (auto upd : {UpdaterKind::SimpleThreshold, UpdaterKind::DistThreshold,
                     UpdaterKind::OnlineKMeans}) {
        RunConfig cfg = base_config("dynamic", SchedulerKind::Dpsac, 5);
        cfg.updater = upd;
        CAPTURE(updater_name(upd));
        auto r = run(cfg);
        check_invariants(r);
        // initial batch of 7 plus the admitted joiners (2 EAP, 1 LAP5, 2 Silverton)
        CHECK(r.per_app.size() == 12);
    }
}

TEST_CASE("literal buffer test stays within invariants") {
    auto cfg = base_config("set1", SchedulerKind::Dpsac, 2);
    cfg.overrides.literal_buffer_test = true;
    auto r = run(cfg);
    check_invariants(r);
}

TEST_CASE("strategy endpoints run the congested set") {
    for (const char* strat : {"mindilation", "maxsyseff", "minmax:0", "minmax:1"}) {
        auto cfg = base_config("set1", SchedulerKind::Dpsac, 9);
        cfg.strategy = parse_strategy(strat);
        auto r = run(cfg);
        check_invariants(r);
    }
}
