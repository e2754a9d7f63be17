#include "edgefed/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "edgefed/errors.hpp"
#include "edgefed/rng.hpp"

namespace edgefed {

void validate(const WorkloadSpec& spec, std::span<const TaskType> types) {
    if (spec.num_applications < 0) {
        throw ConfigError("workload.num_applications must be >= 0");
    }
    if (spec.tasks_per_app_min < 1 || spec.tasks_per_app_max < spec.tasks_per_app_min) {
        throw ConfigError("workload.tasks_per_app must satisfy 1 <= min <= max");
    }
    if (spec.type_mix.size() != types.size()) {
        throw ConfigError("workload.type_mix needs one weight per task type (" + std::to_string(types.size()) +
                          "), got " + std::to_string(spec.type_mix.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.type_mix.size(); ++i) {
        const double w = spec.type_mix[i];
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("workload.type_mix[" + std::to_string(i) + "] must be >= 0");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("workload.type_mix must sum to 1 (got " + std::to_string(sum) + ")");
    }
    if (!(spec.horizon_s > 0.0) || !std::isfinite(spec.horizon_s)) {
        throw ConfigError("workload.horizon_s must be > 0");
    }
    if (!(spec.task_rate_per_s > 0.0) || !std::isfinite(spec.task_rate_per_s)) {
        throw ConfigError("workload.task_rate_per_s must be > 0");
    }
    if (!(spec.min_length_fraction > 0.0) || !(spec.min_length_fraction < 1.0)) {
        throw ConfigError("workload.min_length_fraction must be in (0, 1)");
    }
    if (spec.burst) {
        const auto& b = *spec.burst;
        if (!(b.start_s >= 0.0) || !std::isfinite(b.start_s)) {
            throw ConfigError("workload.burst.start_s must be >= 0");
        }
        if (!(b.duration_s >= 0.0) || !std::isfinite(b.duration_s)) {
            throw ConfigError("workload.burst.duration_s must be >= 0");
        }
        if (!(b.rate_multiplier > 0.0) || !std::isfinite(b.rate_multiplier)) {
            throw ConfigError("workload.burst.rate_multiplier must be > 0");
        }
    }
}

double intensity_multiplier(const WorkloadSpec& spec, double t) {
    if (spec.burst && t >= spec.burst->start_s && t < spec.burst->start_s + spec.burst->duration_s) {
        return spec.burst->rate_multiplier;
    }
    return 1.0;
}

double expected_tasks(const WorkloadSpec& spec) {
    return spec.num_applications * 0.5 * (spec.tasks_per_app_min + spec.tasks_per_app_max);
}

namespace {

// Piecewise-constant start intensity on [0, horizon) as (begin, end, weight) segments.
struct Segment {
    double begin;
    double end;
    double weight;
};

std::vector<Segment> intensity_segments(const WorkloadSpec& spec) {
    const double h = spec.horizon_s;
    if (!spec.burst) {
        return {{0.0, h, 1.0}};
    }
    const double b0 = std::clamp(spec.burst->start_s, 0.0, h);
    const double b1 = std::clamp(spec.burst->start_s + spec.burst->duration_s, 0.0, h);
    std::vector<Segment> segs;
    if (b0 > 0.0) segs.push_back({0.0, b0, 1.0});
    if (b1 > b0) segs.push_back({b0, b1, spec.burst->rate_multiplier});
    if (h > b1) segs.push_back({b1, h, 1.0});
    return segs;
}

// Inverse-CDF draw from the normalized intensity.
double sample_start(const std::vector<Segment>& segs, double total_mass, Rng& rng) {
    double u = rng.uniform01() * total_mass;
    for (const auto& s : segs) {
        const double mass = (s.end - s.begin) * s.weight;
        if (u < mass) {
            return s.begin + u / s.weight;
        }
        u -= mass;
    }
    return segs.back().end * (1.0 - 0x1.0p-52);
}

std::size_t sample_type(std::span<const double> cumulative, Rng& rng) {
    const double u = rng.uniform01();
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        if (u < cumulative[i]) return i;
    }
    // Rounding left u above the last cumulative weight; take the last non-zero type.
    for (std::size_t i = cumulative.size(); i-- > 0;) {
        if (i == 0 || cumulative[i] > cumulative[i - 1]) return i;
    }
    return 0;
}

}  // namespace

std::vector<Task> generate(const WorkloadSpec& spec, std::span<const TaskType> types, int num_edges,
                           std::uint64_t seed) {
    validate(spec, types);
    for (const auto& t : types) validate(t);
    if (num_edges < 1) {
        throw ConfigError("workload: need at least one edge node for task origins");
    }
    std::vector<Task> tasks;
    if (spec.num_applications == 0) {
        return tasks;
    }

    Rng rng(seed);
    const auto segs = intensity_segments(spec);
    double total_mass = 0.0;
    for (const auto& s : segs) total_mass += (s.end - s.begin) * s.weight;

    std::vector<double> starts(static_cast<std::size_t>(spec.num_applications));
    for (auto& s : starts) s = sample_start(segs, total_mass, rng);
    std::sort(starts.begin(), starts.end());

    std::vector<double> cumulative(spec.type_mix.size());
    std::partial_sum(spec.type_mix.begin(), spec.type_mix.end(), cumulative.begin());

    for (double start : starts) {
        const auto origin = static_cast<NodeId>(rng.uniform_int(0, num_edges - 1));
        const auto count = rng.uniform_int(spec.tasks_per_app_min, spec.tasks_per_app_max);
        double t = start;
        for (std::int64_t k = 0; k < count; ++k) {
            if (k > 0) t += rng.exponential(spec.task_rate_per_s);
            const auto type_index = sample_type(cumulative, rng);
            const auto& type = types[type_index];
            Task task;
            task.type_id = type.id;
            task.origin = origin;
            task.arrival_time = t;
            task.length_mi =
                sample_truncated_normal(type.length_mi, spec.min_length_fraction * type.length_mi.mean, rng);
            tasks.push_back(task);
        }
    }

    std::stable_sort(tasks.begin(), tasks.end(),
                     [](const Task& a, const Task& b) { return a.arrival_time < b.arrival_time; });
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        tasks[i].id = static_cast<TaskId>(i);
    }
    return tasks;
}

std::vector<TaskType> default_task_types() {
    // Calibration values, not measurements: urgent tasks run roughly 1-2 s on
    // a 1500-2500 MIPS edge, so a 0.57 s satellite hop is decisive for them.
    return {
        {0, "urgent_a", Urgency::urgent, {1500.0, 300.0}, 200.0, 20.0, 1.5, 1.0, 0.25},
        {1, "urgent_b", Urgency::urgent, {3000.0, 600.0}, 500.0, 50.0, 1.5, 1.0, 0.25},
        {2, "tolerant_a", Urgency::tolerant, {6000.0, 1200.0}, 1000.0, 100.0, 3.0, 1.0, 1.0},
        {3, "tolerant_b", Urgency::tolerant, {12000.0, 2400.0}, 2000.0, 200.0, 3.0, 1.0, 1.0},
    };
}

}  // namespace edgefed
