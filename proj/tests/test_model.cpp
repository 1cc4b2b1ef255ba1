#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "dpsac/model.hpp"

using namespace dpsac;

TEST_CASE("derive_probability matches the catalog ratios") {
    CHECK(derive_probability(20, 5671) == doctest::Approx(3.527e-3).epsilon(1e-3));
    CHECK(derive_probability(25, 12682) == doctest::Approx(1.971e-3).epsilon(1e-3));
    CHECK(derive_probability(7.5, 15.0) == doctest::Approx(0.5));
    // P * T recovers the io time
    for (double io : {20.0, 23.4, 280.0})
        CHECK(derive_probability(io, 15005) * 15005 == doctest::Approx(io).epsilon(1e-12));
}

TEST_CASE("derive_probability rejects malformed phases") {
    CHECK_THROWS_AS(derive_probability(0, 100), std::invalid_argument);
    CHECK_THROWS_AS(derive_probability(-5, 100), std::invalid_argument);
    CHECK_THROWS_AS(derive_probability(100, 100), std::invalid_argument);
    CHECK_THROWS_AS(derive_probability(200, 100), std::invalid_argument);
}

TEST_CASE("apex catalog carries the four workflows") {
    auto cat = apex_catalog();
    REQUIRE(cat.size() == 4);
    CHECK(cat[0].name == "EAP");
    CHECK(cat[0].bandwidth == 160);
    CHECK(cat[0].period == 5671);
    CHECK(cat[0].num_instances == 13);
    CHECK(cat[2].io_time == 280);
    CHECK(cat[3].io_time == doctest::Approx(23.4));
    for (const auto& a : cat) {
        CHECK(a.nodes == a.bandwidth);  // 1 GB/s per node
        CHECK(a.compute_work() + a.io_time == doctest::Approx(a.period).epsilon(1e-12));
        CHECK(a.io_volume() == doctest::Approx(a.io_time * a.bandwidth));
    }
}

TEST_CASE("scaling stretches io while compute work stays put") {
    auto cat = apex_catalog();
    auto eap10 = scale_application(cat[0], 10);
    CHECK(eap10.name == "EAP10");
    CHECK(eap10.io_time == doctest::Approx(200));
    CHECK(eap10.compute_work() == doctest::Approx(5651));
    CHECK(eap10.period == doctest::Approx(5851));
    CHECK(eap10.num_instances == cat[0].num_instances);

    auto same = scale_application(cat[1], 1);
    CHECK(same.name == "LAP");
    CHECK(same.period == cat[1].period);

    auto half = scale_application(cat[2], 0.5);
    CHECK(half.name == "Silverton0.5");
    CHECK(half.io_time == doctest::Approx(140));
    CHECK(half.compute_work() == doctest::Approx(cat[2].compute_work()));
}

TEST_CASE("time_unit is the mean io time") {
    auto cat = apex_catalog();
    std::vector<ApplicationSpec> pair = {cat[0], cat[1]};
    CHECK(time_unit(pair) == doctest::Approx(22.5));
    std::vector<ApplicationSpec> single = {cat[2]};
    CHECK(time_unit(single) == doctest::Approx(280));
    std::vector<ApplicationSpec> triple = {cat[0], cat[0], cat[0]};
    CHECK(time_unit(triple) == doctest::Approx(20));
    std::vector<ApplicationSpec> empty;
    CHECK_THROWS_AS(time_unit(empty), std::invalid_argument);
}

namespace {
int count_of(const ScenarioSpec& s, const std::string& name) {
    for (const auto& e : s.initial_batch)
        if (e.app.name == name) return e.count;
    return 0;
}
}  // namespace

TEST_CASE("congestion sets follow the published mixes") {
    auto s1 = build_scenario("set1");
    CHECK(s1.initial_batch.size() == 3);
    CHECK(count_of(s1, "LAP") == 10);
    CHECK(count_of(s1, "LAP5") == 2);
    CHECK(count_of(s1, "Silverton") == 1);
    CHECK(s1.application_count() == 13);

    auto s5 = build_scenario("set5");
    CHECK(count_of(s5, "EAP") == 1);
    CHECK(count_of(s5, "LAP") == 2);
    CHECK(count_of(s5, "LAP5") == 1);
    CHECK(count_of(s5, "Silverton0.5") == 1);
    CHECK(count_of(s5, "VPIC10") == 1);
    CHECK(count_of(s5, "Silverton") == 1);
    CHECK(s5.initial_batch.size() == 6);

    CHECK_THROWS_AS(build_scenario("set0"), std::invalid_argument);
    CHECK_THROWS_AS(build_scenario("set11"), std::invalid_argument);
    CHECK_THROWS_AS(build_scenario("nope"), std::invalid_argument);
}

TEST_CASE("scenario construction is pure") {
    for (const auto& name : builtin_scenarios()) {
        auto a = build_scenario(name);
        auto b = build_scenario(name);
        REQUIRE(a.initial_batch.size() == b.initial_batch.size());
        for (std::size_t i = 0; i < a.initial_batch.size(); ++i) {
            CHECK(a.initial_batch[i].app.name == b.initial_batch[i].app.name);
            CHECK(a.initial_batch[i].count == b.initial_batch[i].count);
            CHECK(a.initial_batch[i].app.period == b.initial_batch[i].app.period);
        }
        CHECK(a.total_expected_load() == b.total_expected_load());
    }
}

TEST_CASE("every congestion set keeps expected load under the PFS bandwidth") {
    SystemConfig sys;
    for (int i = 1; i <= 10; ++i) {
        auto s = build_scenario("set" + std::to_string(i));
        CHECK(s.total_expected_load() < sys.pfs_bandwidth);
    }
}

TEST_CASE("dynamic scenario carries the periodic joiners") {
    auto s = build_scenario("dynamic");
    REQUIRE(s.periodic_joins.size() == 3);
    CHECK(s.periodic_joins[0].app.name == "EAP");
    CHECK(s.periodic_joins[0].join_period == doctest::Approx(34026));
    CHECK(s.periodic_joins[0].instances_per_join == 5);
    CHECK(s.periodic_joins[1].app.name == "LAP5");
    CHECK(s.periodic_joins[1].join_period == doctest::Approx(3 * 12682.0));
    CHECK(s.periodic_joins[2].app.name == "Silverton");
    CHECK(s.periodic_joins[2].join_period == doctest::Approx(2 * 15005.0));
    REQUIRE(s.horizon.has_value());
    CHECK(*s.horizon == doctest::Approx(13 * 5671.0));

    auto batch = build_scenario("batch");
    CHECK(batch.periodic_joins.empty());
    CHECK(batch.initial_batch.size() == 6);
    CHECK(batch.application_count() == 7);  // LAP appears twice
    int lap5_instances = 0;
    for (const auto& e : batch.initial_batch)
        if (e.app.name == "LAP5") lap5_instances = e.app.num_instances;
    CHECK(lap5_instances == 2);
}
