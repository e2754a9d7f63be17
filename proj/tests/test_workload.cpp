#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "edgefed/config.hpp"
#include "edgefed/errors.hpp"
#include "edgefed/workload.hpp"

using namespace edgefed;

namespace {

WorkloadSpec spec_with(int apps) {
    WorkloadSpec s = default_config().workload;
    s.num_applications = apps;
    return s;
}

}  // namespace

TEST_SUITE("workload") {

TEST_CASE("default task types") {
    const auto types = default_task_types();
    REQUIRE(types.size() == 4);
    int urgent = 0;
    for (std::size_t i = 0; i < types.size(); ++i) {
        CHECK(types[i].id == static_cast<TypeId>(i));
        CHECK(types[i].length_mi.stddev < types[i].length_mi.mean / 2);
        CHECK(types[i].input_kb > 0);
        urgent += types[i].urgency == Urgency::urgent ? 1 : 0;
    }
    CHECK(urgent == 2);
}

TEST_CASE("zero applications give an empty stream") {
    const auto types = default_task_types();
    CHECK(generate(spec_with(0), types, 6, 1).empty());
}

TEST_CASE("task totals and ordering") {
    const auto types = default_task_types();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto tasks = generate(spec_with(50), types, 6, seed);
        CHECK(tasks.size() >= 500);
        CHECK(tasks.size() <= 2000);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            CHECK(tasks[i].id == static_cast<TaskId>(i));
            CHECK(tasks[i].origin >= 0);
            CHECK(tasks[i].origin < 6);
            CHECK(tasks[i].arrival_time >= 0.0);
            const auto& t = types[static_cast<std::size_t>(tasks[i].type_id)];
            CHECK(tasks[i].length_mi >= 0.1 * t.length_mi.mean);
            CHECK(tasks[i].deadline == 0.0);
            if (i > 0) CHECK(tasks[i - 1].arrival_time <= tasks[i].arrival_time);
        }
    }
}

TEST_CASE("generation is deterministic per seed") {
    const auto types = default_task_types();
    const auto a = generate(spec_with(120), types, 6, 99);
    const auto b = generate(spec_with(120), types, 6, 99);
    const auto c = generate(spec_with(120), types, 6, 100);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].arrival_time == b[i].arrival_time);
        CHECK(a[i].length_mi == b[i].length_mi);
        CHECK(a[i].type_id == b[i].type_id);
        CHECK(a[i].origin == b[i].origin);
    }
    bool differs = a.size() != c.size();
    for (std::size_t i = 0; !differs && i < a.size(); ++i) differs = a[i].arrival_time != c[i].arrival_time;
    CHECK(differs);
}

TEST_CASE("type mix matches the configured weights") {
    const auto types = default_task_types();
    auto spec = spec_with(1000);
    spec.horizon_s = 5000;
    const auto tasks = generate(spec, types, 6, 5);
    REQUIRE(tasks.size() >= 10000);
    std::vector<double> counts(types.size(), 0.0);
    for (const auto& t : tasks) counts[static_cast<std::size_t>(t.type_id)] += 1;
    for (std::size_t i = 0; i < types.size(); ++i)
        CHECK(std::abs(counts[i] / static_cast<double>(tasks.size()) - spec.type_mix[i]) <= 0.02);
}

TEST_CASE("origins are spread over the edges") {
    const auto types = default_task_types();
    const auto tasks = generate(spec_with(600), types, 6, 8);
    std::vector<int> per(6, 0);
    for (const auto& t : tasks) ++per[static_cast<std::size_t>(t.origin)];
    for (int n : per) CHECK(n > 0);
}

TEST_CASE("expected tasks scale with the application count") {
    const double base = expected_tasks(spec_with(50));
    CHECK(base == doctest::Approx(50 * 25.0));
    for (int k = 1; k <= 5; ++k) CHECK(expected_tasks(spec_with(50 * k)) == doctest::Approx(k * base));

    // Empirical mean tracks the expectation.
    const auto types = default_task_types();
    double total = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) total += static_cast<double>(generate(spec_with(100), types, 6, seed).size());
    CHECK(total / 40 == doctest::Approx(expected_tasks(spec_with(100))).epsilon(0.03));
}

TEST_CASE("burst concentrates application starts") {
    auto spec = spec_with(50);
    REQUIRE(spec.burst);
    const auto& b = *spec.burst;
    CHECK(intensity_multiplier(spec, b.start_s - 1) == 1.0);
    CHECK(intensity_multiplier(spec, b.start_s) == b.rate_multiplier);
    CHECK(intensity_multiplier(spec, b.start_s + b.duration_s) == 1.0);

    // Fraction of tasks arriving in the burst window exceeds its share of the horizon.
    spec.num_applications = 2000;
    const auto tasks = generate(spec, default_task_types(), 6, 3);
    double inside = 0;
    for (const auto& t : tasks) inside += (t.arrival_time >= b.start_s && t.arrival_time < b.start_s + b.duration_s) ? 1 : 0;
    CHECK(inside / static_cast<double>(tasks.size()) > 1.5 * b.duration_s / spec.horizon_s);
}

TEST_CASE("invalid specs are rejected") {
    const auto types = default_task_types();
    auto spec = spec_with(10);
    spec.tasks_per_app_min = 5;
    spec.tasks_per_app_max = 4;
    CHECK_THROWS_AS(validate(spec, types), ConfigError);
    spec = spec_with(-1);
    CHECK_THROWS_AS(validate(spec, types), ConfigError);
    spec = spec_with(10);
    spec.type_mix = {0.5, 0.5};
    CHECK_THROWS_AS(validate(spec, types), ConfigError);
    spec = spec_with(10);
    spec.type_mix = {0.5, 0.5, 0.5, -0.5};
    CHECK_THROWS_AS(validate(spec, types), ConfigError);
}

}
