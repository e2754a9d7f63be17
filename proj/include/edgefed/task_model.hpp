#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "edgefed/platform.hpp"
#include "edgefed/stats.hpp"

namespace edgefed {

using TaskId = std::int64_t;
using TypeId = std::int32_t;

enum class Urgency { urgent, tolerant };

std::string_view to_string(Urgency u);

/// A service (task) type: how long its tasks are and how tight their deadlines get.
///
/// Deadline constants: `beta` scales the mean edge completion time, `alpha`
/// scales the communication latency and `epsilon` is a fixed slack in seconds.
struct TaskType {
    TypeId id = 0;
    std::string name;
    Urgency urgency = Urgency::urgent;
    NormalDist length_mi;      ///< task length, million instructions
    double input_kb = 0.0;
    double output_kb = 0.0;
    double beta = 1.0;
    double alpha = 1.0;
    double epsilon_s = 0.0;
};

/// Throws ConfigError naming the offending field.
void validate(const TaskType& type);

enum class TaskState { created, transferring, queued, executing, completed, dropped };

std::string_view to_string(TaskState s);

struct Task {
    TaskId id = 0;
    TypeId type_id = 0;
    NodeId origin = 0;
    double arrival_time = 0.0;
    double length_mi = 0.0;
    double deadline = 0.0;  ///< absolute sim time
    TaskState state = TaskState::created;
};

/// True if `from -> to` is a legal lifecycle step.
bool is_valid_transition(TaskState from, TaskState to);

/// Absolute deadline: arrival + beta * avg_completion + alpha * d_comm + epsilon.
double assign_deadline(double arrival, const TaskType& type, double avg_completion, double d_comm);

/// Mean over edge nodes of the type's mean execution time on that node.
double avg_completion_over_edges(const TaskType& type, std::span<const NodeSpec> nodes);

}  // namespace edgefed
