#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "edgefed/estimator.hpp"
#include "edgefed/task_model.hpp"

namespace edgefed {

enum class Heuristic { hps, mect, scc };

std::string_view to_string(Heuristic h);
/// Throws ConfigError listing the valid names.
Heuristic parse_heuristic(std::string_view name);

enum class Route { federation, cloud };

/// Service-balancer pre-sort: latency-intolerant work stays in the federation.
Route route_by_urgency(const TaskType& type);

struct AllocationDecision {
    TaskId task = 0;
    std::optional<NodeId> target;  ///< empty iff dropped
    /// HPS: success probability. MECT: expected computation seconds. SCC: expected slack seconds.
    double score = 0.0;
    bool dropped = false;
};

/// Probability that `task` finishes on `candidate` before its deadline when
/// the decision is taken at `now` on `receiving`. Remote candidates pay the
/// receiving -> candidate transfer distribution on top of their ETC cell.
double success_probability(const Task& task, NodeId candidate, NodeId receiving, const Estimator& est,
                           double now);

AllocationDecision hps_select(const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                              const Estimator& est, double now);
AllocationDecision mect_select(const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                               const Estimator& est, double now);
AllocationDecision scc_select(const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                              const Estimator& est, double now);

AllocationDecision select(Heuristic h, const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                          const Estimator& est, double now);

}  // namespace edgefed
