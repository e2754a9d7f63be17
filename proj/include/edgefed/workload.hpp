#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgefed/task_model.hpp"

namespace edgefed {

/// Incident surge: application starts arrive `rate_multiplier` times faster
/// inside [start_s, start_s + duration_s).
struct Burst {
    double start_s = 0.0;
    double duration_s = 0.0;
    double rate_multiplier = 1.0;
};

struct WorkloadSpec {
    int num_applications = 50;
    int tasks_per_app_min = 10;
    int tasks_per_app_max = 40;
    std::vector<double> type_mix;        ///< weight per task type, sums to 1
    double horizon_s = 600.0;            ///< application starts fall in [0, horizon)
    double task_rate_per_s = 1.0;        ///< within-application Poisson task rate
    std::optional<Burst> burst;
    double min_length_fraction = 0.1;    ///< length floor as a fraction of the type mean
};

void validate(const WorkloadSpec& spec, std::span<const TaskType> types);

/// Application start intensity relative to the base rate at time t.
double intensity_multiplier(const WorkloadSpec& spec, double t);

double expected_tasks(const WorkloadSpec& spec);

/// Generates the task stream, sorted by (arrival, id). Ids are assigned in
/// that order starting at 0. Deadlines are left at 0; the engine assigns
/// them on arrival.
///
/// Application starts form a Poisson process over the horizon conditioned on
/// exactly `num_applications` starts, with the burst window scaling the
/// intensity. Each application picks an origin edge uniformly and emits a
/// uniform [min, max] number of tasks as a Poisson stream from its start.
std::vector<Task> generate(const WorkloadSpec& spec, std::span<const TaskType> types, int num_edges,
                           std::uint64_t seed);

/// The four built-in service types: two latency-intolerant, two tolerant.
std::vector<TaskType> default_task_types();

}  // namespace edgefed
