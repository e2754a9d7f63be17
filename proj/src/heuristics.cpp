#include "edgefed/heuristics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "edgefed/errors.hpp"

namespace edgefed {

std::string_view to_string(Heuristic h) {
    switch (h) {
    case Heuristic::hps: return "hps";
    case Heuristic::mect: return "mect";
    case Heuristic::scc: return "scc";
    }
    return "?";
}

Heuristic parse_heuristic(std::string_view name) {
    if (name == "hps") return Heuristic::hps;
    if (name == "mect") return Heuristic::mect;
    if (name == "scc") return Heuristic::scc;
    throw ConfigError("heuristic: unknown name '" + std::string(name) + "' (valid: hps, mect, scc)");
}

Route route_by_urgency(const TaskType& type) {
    return type.urgency == Urgency::urgent ? Route::federation : Route::cloud;
}

namespace {

NormalDist completion_dist(const Task& task, NodeId candidate, NodeId receiving, const Estimator& est) {
    const NormalDist etc = est.etc_dist(task.type_id, candidate);
    if (candidate == receiving) {
        return etc;
    }
    return convolve_normals(est.ett_dist(receiving, candidate), etc);
}

// Standardized score: Phi(rank) is the success probability, so ordering by
// rank orders by probability without losing resolution where Phi saturates
// to 0 or 1 in double precision.
double success_rank(const NormalDist& dist, double budget) {
    if (dist.stddev == 0.0) {
        return budget >= dist.mean ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
    }
    return (budget - dist.mean) / dist.stddev;
}

// Tie-break: the receiving node first, then the lowest id.
bool preferred_on_tie(NodeId candidate, NodeId incumbent, NodeId receiving) {
    if (incumbent == receiving) return false;
    if (candidate == receiving) return true;
    return candidate < incumbent;
}

// Index into `nodes` of the maximum key under the tie-break rule.
template <typename KeyFn>
std::size_t arg_best(std::span<const NodeId> nodes, NodeId receiving, KeyFn key) {
    if (nodes.empty()) {
        throw InternalError("allocation: empty candidate list");
    }
    std::size_t best = 0;
    double best_key = key(nodes[0]);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double k = key(nodes[i]);
        if (k > best_key || (k == best_key && preferred_on_tie(nodes[i], nodes[best], receiving))) {
            best = i;
            best_key = k;
        }
    }
    return best;
}

}  // namespace

double success_probability(const Task& task, NodeId candidate, NodeId receiving, const Estimator& est,
                           double now) {
    return prob_before(completion_dist(task, candidate, receiving, est), task.deadline - now);
}

AllocationDecision hps_select(const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                              const Estimator& est, double now) {
    const double budget = task.deadline - now;
    const auto best = arg_best(nodes, receiving, [&](NodeId n) {
        return success_rank(completion_dist(task, n, receiving, est), budget);
    });
    const NodeId target = nodes[best];
    return {task.id, target, success_probability(task, target, receiving, est, now), false};
}

AllocationDecision mect_select(const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                               const Estimator& est, double /*now*/) {
    const auto best =
        arg_best(nodes, receiving, [&](NodeId n) { return -est.etc_dist(task.type_id, n).mean; });
    const NodeId target = nodes[best];
    return {task.id, target, est.etc_dist(task.type_id, target).mean, false};
}

AllocationDecision scc_select(const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                              const Estimator& est, double now) {
    const double budget = task.deadline - now;
    auto slack = [&](NodeId n) { return budget - est.etc_dist(task.type_id, n).mean; };
    const auto best = arg_best(nodes, receiving, slack);
    const double best_slack = slack(nodes[best]);
    if (best_slack <= 0.0) {
        return {task.id, std::nullopt, best_slack, true};
    }
    return {task.id, nodes[best], best_slack, false};
}

AllocationDecision select(Heuristic h, const Task& task, std::span<const NodeId> nodes, NodeId receiving,
                          const Estimator& est, double now) {
    switch (h) {
    case Heuristic::hps: return hps_select(task, nodes, receiving, est, now);
    case Heuristic::mect: return mect_select(task, nodes, receiving, est, now);
    case Heuristic::scc: return scc_select(task, nodes, receiving, est, now);
    }
    throw InternalError("select: unknown heuristic");
}

}  // namespace edgefed
