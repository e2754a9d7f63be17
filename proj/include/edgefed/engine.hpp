#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "edgefed/config.hpp"
#include "edgefed/estimator.hpp"
#include "edgefed/metrics.hpp"
#include "edgefed/task_model.hpp"

namespace edgefed {

enum class EventKind { task_arrival, transfer_complete, exec_complete, matrix_refresh, end_of_run };

std::string_view to_string(EventKind k);

struct Event {
    double time = 0.0;
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::end_of_run;
    std::int64_t task = -1;  ///< index into the run's task vector, -1 for none
};

/// Final state of one task.
struct TaskOutcome {
    TaskId id = 0;
    TypeId type = 0;
    NodeId origin = 0;
    NodeId target = -1;  ///< executing node (cloud = number of edges); -1 when dropped
    double arrival = 0.0;
    double deadline = 0.0;
    double completion = 0.0;  ///< 0 when dropped
    bool dropped = false;
    bool missed = false;
};

struct SimulationResult {
    RunReport report;
    std::vector<TaskOutcome> outcomes;  ///< indexed like the input task stream
    Estimator estimator;                ///< matrices at end of run
};

/// Per (type, origin) relative deadline: beta * avg_i + alpha * d_comm + epsilon.
///
/// avg_i uses ground-truth execution means over the edge nodes; d_comm is the
/// mean ground-truth transfer time from the origin to the other nodes of the
/// task's tier (peer edges for urgent types, the cloud for tolerant ones).
class DeadlinePlanner {
public:
    explicit DeadlinePlanner(const SimulationConfig& cfg);
    double relative_deadline(TypeId type, NodeId origin) const;
    double d_comm(TypeId type, NodeId origin) const;

private:
    std::size_t num_edges_;
    std::vector<double> relative_;  ///< type-major
    std::vector<double> d_comm_;
};

/// Expected transfer time of `base + |N(0, jitter)|` floored at the minimum.
double expected_transfer_time(double base, double jitter_stddev, double min_transfer);

/// The task stream `run` would simulate for this seed, with deadlines filled in.
std::vector<Task> workload_for_run(const SimulationConfig& cfg, std::uint64_t seed);

/// Runs one simulation of the workload generated from (cfg.workload, seed).
/// When `trace` is set, one JSON line per dispatched event is written to it.
SimulationResult run(const SimulationConfig& cfg, std::uint64_t seed, std::ostream* trace = nullptr);

/// Same, for an explicit task stream (sorted by arrival; deadlines are assigned here).
SimulationResult simulate(const SimulationConfig& cfg, std::vector<Task> tasks, std::uint64_t seed,
                          std::ostream* trace = nullptr);

}  // namespace edgefed
