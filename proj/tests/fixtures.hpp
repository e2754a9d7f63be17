#pragma once

#include <vector>

#include "edgefed/config.hpp"
#include "edgefed/task_model.hpp"

namespace fixtures {

// Small deterministic platform: no jitter, no burst, one urgent and one
// tolerant type. Deadlines default to 2x the mean execution time.
inline edgefed::SimulationConfig tiny_config(std::vector<double> mips, int cores = 1) {
    using namespace edgefed;
    SimulationConfig cfg = default_config();
    cfg.nodes.clear();
    for (std::size_t i = 0; i < mips.size(); ++i) cfg.nodes.push_back({static_cast<NodeId>(i), mips[i], cores});
    cfg.network.wlan_jitter_stddev_s = 0.0;
    cfg.network.sat_jitter_stddev_s = 0.0;

    TaskType urgent;
    urgent.id = 0;
    urgent.name = "u";
    urgent.urgency = Urgency::urgent;
    urgent.length_mi = {1000.0, 0.0};
    urgent.input_kb = 100.0;
    urgent.output_kb = 10.0;
    urgent.beta = 2.0;
    urgent.alpha = 0.0;
    urgent.epsilon_s = 0.0;

    TaskType tolerant = urgent;
    tolerant.id = 1;
    tolerant.name = "t";
    tolerant.urgency = Urgency::tolerant;
    tolerant.alpha = 1.0;

    cfg.task_types = {urgent, tolerant};
    cfg.workload.type_mix = {1.0, 0.0};
    cfg.workload.burst.reset();
    return cfg;
}

inline edgefed::Task task(edgefed::TaskId id, double arrival, double length, edgefed::TypeId type = 0,
                          edgefed::NodeId origin = 0) {
    edgefed::Task t;
    t.id = id;
    t.arrival_time = arrival;
    t.length_mi = length;
    t.type_id = type;
    t.origin = origin;
    return t;
}

}  // namespace fixtures
