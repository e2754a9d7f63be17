#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgefed/task_model.hpp"

namespace edgefed {

struct TypeStats {
    std::int64_t count = 0;
    std::int64_t misses = 0;
    double miss_rate = 0.0;
};

struct NodeStats {
    std::int64_t executed = 0;
    std::int64_t misses = 0;
};

struct RunReport {
    std::string heuristic;
    int num_applications = 0;
    std::uint64_t seed = 0;
    std::int64_t tasks_total = 0;
    std::int64_t tasks_completed = 0;
    std::int64_t tasks_dropped = 0;
    std::int64_t misses_total = 0;
    double miss_rate = 0.0;
    std::vector<TypeStats> per_type;
    std::vector<NodeStats> per_node;  ///< edges, then the cloud
    double miss_rate_urgent = 0.0;
    double miss_rate_tolerant = 0.0;
    double mean_completion_urgent = 0.0;    ///< mean response time (completion - arrival) of completed tasks
    double mean_completion_tolerant = 0.0;
};

/// Per-run outcome accumulator. A task counts as a miss when it was dropped
/// or completed strictly after its deadline.
class MetricsRecorder {
public:
    MetricsRecorder(std::vector<Urgency> type_urgency, std::size_t num_nodes, std::int64_t num_tasks);

    /// `completion` empty means dropped; `node` is ignored for drops.
    /// Throws InternalError when the task was already recorded.
    void record_outcome(const Task& task, std::optional<double> completion, NodeId node);

    std::int64_t recorded() const { return recorded_; }

    /// Checks conservation and per-type sums; throws InternalError on violation.
    RunReport finalize(std::string heuristic, int num_applications, std::uint64_t seed) const;

private:
    std::vector<Urgency> urgency_;
    std::vector<bool> seen_;
    std::int64_t recorded_ = 0;
    std::int64_t completed_ = 0;
    std::int64_t dropped_ = 0;
    std::vector<TypeStats> per_type_;
    std::vector<NodeStats> per_node_;
    double response_sum_[2] = {0.0, 0.0};
    std::int64_t response_n_[2] = {0, 0};
    std::int64_t class_count_[2] = {0, 0};
    std::int64_t class_misses_[2] = {0, 0};
};

/// One row of the sweep table: miss rate statistics over replications.
struct SweepRow {
    std::string heuristic;
    int num_applications = 0;
    std::int64_t replications = 0;
    double miss_rate_mean = 0.0;
    double miss_rate_stddev = 0.0;  ///< sample stddev; 0 for a single replication
};

/// Groups by (heuristic, num_applications), sorted by that key.
std::vector<SweepRow> aggregate_sweep(std::span<const RunReport> reports);

std::string format_fixed(double value, int decimals = 6);

std::string report_csv_header();
std::string report_csv_row(const RunReport& r);
std::string reports_csv(std::span<const RunReport> reports);

std::string sweep_csv_header();
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace edgefed
