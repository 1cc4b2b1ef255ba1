#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <vector>

#include "dpsac/load.hpp"
#include "dpsac/rng.hpp"

using namespace dpsac;

namespace {

// Probability-weighted enumeration over all transfer subsets.
std::vector<double> brute_force_pmf(const std::vector<std::pair<int, double>>& apps) {
    int total = 0;
    for (const auto& [b, p] : apps) total += b;
    std::vector<double> pmf(static_cast<std::size_t>(total) + 1, 0.0);
    std::size_t n = apps.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double prob = 1.0;
        int load = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                prob *= apps[i].second;
                load += apps[i].first;
            } else {
                prob *= 1.0 - apps[i].second;
            }
        }
        pmf[static_cast<std::size_t>(load)] += prob;
    }
    return pmf;
}

std::vector<std::pair<int, double>> random_apps(Rng& rng, std::size_t n, int max_b) {
    std::vector<std::pair<int, double>> apps;
    for (std::size_t i = 0; i < n; ++i)
        apps.emplace_back(1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_b)),
                          rng.next_double());
    return apps;
}

}  // namespace

TEST_CASE("pinned load distributions") {
    std::vector<std::pair<int, double>> one = {{1, 0.5}};
    auto d1 = LoadDistribution::from_apps(one);
    REQUIRE(d1.pmf().size() == 2);
    CHECK(d1.pmf()[0] == doctest::Approx(0.5));
    CHECK(d1.pmf()[1] == doctest::Approx(0.5));

    std::vector<std::pair<int, double>> two = {{1, 0.5}, {2, 0.5}};
    auto d2 = LoadDistribution::from_apps(two);
    REQUIRE(d2.pmf().size() == 4);
    for (double v : d2.pmf()) CHECK(v == doctest::Approx(0.25));

    std::vector<std::pair<int, double>> never = {{7, 0.0}};
    auto d3 = LoadDistribution::from_apps(never);
    CHECK(d3.pmf()[0] == doctest::Approx(1.0));
    for (std::size_t k = 1; k < d3.pmf().size(); ++k) CHECK(d3.pmf()[k] == doctest::Approx(0.0));

    CHECK_THROWS_AS(LoadDistribution().add(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(LoadDistribution().add(-3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(LoadDistribution().add(3, 1.5), std::invalid_argument);
}

TEST_CASE("oracle equivalence against subset enumeration") {
    Rng rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng.next_u64() % 10;
        auto apps = random_apps(rng, n, 8);
        auto dist = LoadDistribution::from_apps(apps);
        auto oracle = brute_force_pmf(apps);
        REQUIRE(dist.pmf().size() == oracle.size());
        for (std::size_t k = 0; k < oracle.size(); ++k)
            CHECK(std::abs(dist.pmf()[k] - oracle[k]) <= 1e-12);
        // mass sums to one, mean matches sum of P_i * B_i
        double mass = 0;
        for (double v : dist.pmf()) mass += v;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        double expect = 0;
        for (const auto& [b, p] : apps) expect += b * p;
        CHECK(dist.mean() == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("fold order does not matter") {
    Rng rng(5);
    auto apps = random_apps(rng, 7, 6);
    auto forward = LoadDistribution::from_apps(apps);
    std::vector<std::pair<int, double>> reversed(apps.rbegin(), apps.rend());
    auto backward = LoadDistribution::from_apps(reversed);
    REQUIRE(forward.pmf().size() == backward.pmf().size());
    for (std::size_t k = 0; k < forward.pmf().size(); ++k)
        CHECK(std::abs(forward.pmf()[k] - backward.pmf()[k]) <= 1e-12);
}

TEST_CASE("add and remove round-trip") {
    auto base = LoadDistribution();
    auto d = base.add(1, 0.5);
    CHECK(d.pmf()[0] == doctest::Approx(0.5));
    auto d2 = d.add(2, 0.5);
    for (double v : d2.pmf()) CHECK(v == doctest::Approx(0.25));

    auto back = d2.remove(2, 0.5);
    REQUIRE(back.pmf().size() == 2);
    CHECK(back.pmf()[0] == doctest::Approx(0.5));
    CHECK(back.pmf()[1] == doctest::Approx(0.5));
    auto empty = back.remove(1, 0.5);
    REQUIRE(empty.pmf().size() == 1);
    CHECK(empty.pmf()[0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(d2.remove(5, 0.5), std::invalid_argument);

    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        auto apps = random_apps(rng, 6, 8);
        for (auto& [b, p] : apps) p = std::min(p, 0.99);
        auto dist = LoadDistribution::from_apps(apps);
        auto extra = std::pair<int, double>{3, 0.7};
        auto round = dist.add(extra.first, extra.second).remove(extra.first, extra.second);
        REQUIRE(round.pmf().size() == dist.pmf().size());
        for (std::size_t k = 0; k < dist.pmf().size(); ++k)
            CHECK(std::abs(round.pmf()[k] - dist.pmf()[k]) <= 1e-9);
    }
}

TEST_CASE("removing a sure transfer rebuilds from scratch") {
    std::vector<std::pair<int, double>> apps = {{2, 1.0}, {1, 0.25}};
    auto d = LoadDistribution::from_apps(apps);
    auto r = d.remove(2, 1.0);
    CHECK(r.pmf()[0] == doctest::Approx(0.75));
    CHECK(r.pmf()[1] == doctest::Approx(0.25));
}

TEST_CASE("tail probabilities") {
    std::vector<std::pair<int, double>> two = {{1, 0.5}, {2, 0.5}};
    auto d = LoadDistribution::from_apps(two);
    CHECK(d.tail(2) == doctest::Approx(0.5));
    CHECK(d.tail(0) == doctest::Approx(1.0));
    CHECK(d.tail(-3) == doctest::Approx(1.0));
    CHECK(d.tail(4) == doctest::Approx(0.0));
    CHECK(d.tail(1.5) == doctest::Approx(0.5));  // ceil to 2
}

TEST_CASE("transition matrix boundary handling") {
    SUBCASE("pure drain walks down to empty") {
        LoadDistribution still;  // point mass at 0
        auto t = transition_matrix(still, 2, 1);
        CHECK(t[0][0] == doctest::Approx(1.0));
        CHECK(t[1][0] == doctest::Approx(1.0));
        CHECK(t[2][1] == doctest::Approx(1.0));
    }
    SUBCASE("two-point load splits between empty and full") {
        auto d = LoadDistribution().add(2, 0.5);
        auto t = transition_matrix(d, 2, 1);
        CHECK(t[1][0] == doctest::Approx(0.5));
        CHECK(t[1][1] == doctest::Approx(0.0));
        CHECK(t[1][2] == doctest::Approx(0.5));
    }
    SUBCASE("rows are stochastic for random inputs") {
        Rng rng(31);
        for (int trial = 0; trial < 30; ++trial) {
            auto apps = random_apps(rng, 1 + rng.next_u64() % 6, 6);
            auto dist = LoadDistribution::from_apps(apps);
            int cap = static_cast<int>(rng.next_u64() % 12);
            int drain = static_cast<int>(rng.next_u64() % 8);
            auto t = transition_matrix(dist, cap, drain);
            for (const auto& row : t) {
                double total = 0;
                for (double v : row) total += v;
                CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("transition-to-full probability") {
    auto d = LoadDistribution().add(2, 0.5);  // {0: .5, 2: .5}
    CHECK(p_full(d, 1, 2, 1) == doctest::Approx(0.5));
    CHECK(p_full(d, 0, 4, 2) == doctest::Approx(0.0));  // capacity + drain above max load

    std::vector<std::pair<int, double>> surely = {{5, 1.0}};
    auto point5 = LoadDistribution::from_apps(surely);
    CHECK(p_full(point5, 3, 3, 0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(p_full(d, -1, 2, 1), std::out_of_range);
    CHECK_THROWS_AS(p_full(d, 3, 2, 1), std::out_of_range);
}
