#include "edgefed/task_model.hpp"

#include <cmath>
#include <string>

#include "edgefed/errors.hpp"

namespace edgefed {

double transfer_base_time(const NetworkModel& net, double size_kb, bool satellite) {
    const double bits = size_kb * 1000.0 * 8.0;
    if (satellite) {
        return net.sat_propagation_s + bits / net.sat_bandwidth_bps;
    }
    return bits / net.wlan_bandwidth_bps;
}

std::string_view to_string(Urgency u) {
    return u == Urgency::urgent ? "urgent" : "tolerant";
}

std::string_view to_string(TaskState s) {
    switch (s) {
    case TaskState::created: return "created";
    case TaskState::transferring: return "transferring";
    case TaskState::queued: return "queued";
    case TaskState::executing: return "executing";
    case TaskState::completed: return "completed";
    case TaskState::dropped: return "dropped";
    }
    return "?";
}

void validate(const TaskType& type) {
    const std::string where = "task_types[" + std::to_string(type.id) + "] (" + type.name + ")";
    check_valid(type.length_mi, (where + ".length_mi").c_str());
    if (!(type.length_mi.mean > 0.0)) {
        throw ConfigError(where + ".length_mi.mean must be > 0");
    }
    if (!(type.input_kb >= 0.0) || !std::isfinite(type.input_kb)) {
        throw ConfigError(where + ".input_kb must be >= 0");
    }
    if (!(type.output_kb >= 0.0) || !std::isfinite(type.output_kb)) {
        throw ConfigError(where + ".output_kb must be >= 0");
    }
    if (!(type.beta > 0.0) || !std::isfinite(type.beta)) {
        throw ConfigError(where + ".beta must be > 0");
    }
    if (!(type.alpha >= 0.0) || !std::isfinite(type.alpha)) {
        throw ConfigError(where + ".alpha must be >= 0");
    }
    if (!(type.epsilon_s >= 0.0) || !std::isfinite(type.epsilon_s)) {
        throw ConfigError(where + ".epsilon_s must be >= 0");
    }
}

bool is_valid_transition(TaskState from, TaskState to) {
    using S = TaskState;
    switch (from) {
    case S::created: return to == S::transferring || to == S::queued || to == S::dropped;
    case S::transferring: return to == S::queued;
    case S::queued: return to == S::executing;
    case S::executing: return to == S::completed;
    case S::completed:
    case S::dropped: return false;
    }
    return false;
}

double assign_deadline(double arrival, const TaskType& type, double avg_completion, double d_comm) {
    if (!(avg_completion > 0.0)) {
        throw ConfigError("assign_deadline: average completion time must be > 0");
    }
    if (!(d_comm >= 0.0)) {
        throw ConfigError("assign_deadline: communication latency must be >= 0");
    }
    return arrival + type.beta * avg_completion + type.alpha * d_comm + type.epsilon_s;
}

double avg_completion_over_edges(const TaskType& type, std::span<const NodeSpec> nodes) {
    if (nodes.empty()) {
        throw ConfigError("avg_completion_over_edges: no edge nodes");
    }
    double sum = 0.0;
    for (const auto& n : nodes) {
        if (!(n.mips > 0.0)) {
            throw ConfigError("avg_completion_over_edges: node " + std::to_string(n.id) +
                              " has non-positive mips");
        }
        sum += type.length_mi.mean / n.mips;
    }
    return sum / static_cast<double>(nodes.size());
}

}  // namespace edgefed
