#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "edgefed/platform.hpp"
#include "edgefed/stats.hpp"
#include "edgefed/task_model.hpp"

namespace edgefed {

struct EstimatorConfig {
    std::size_t window = 50;         ///< observations kept per cell
    double refresh_period_s = 10.0;  ///< sim seconds between publications
    /// ETC prior: N(factor * e, rel_stddev * e) where e = mean length / mips.
    double etc_prior_queue_factor = 2.0;
    double etc_prior_rel_stddev = 1.0;
    /// ETT prior: N(base, rel_stddev * base) where base = propagation + size / bandwidth.
    double ett_prior_rel_stddev = 0.1;
};

void validate(const EstimatorConfig& cfg);

/// Row-major grid of published distributions backed by per-cell sliding windows.
///
/// `record` only touches the window; readers see the published value, which
/// moves only on `refresh`. With n observations in a window:
///   n >= 2  publishes (window mean, window sample stddev)
///   n == 1  publishes (value, prior stddev)
///   n == 0  leaves the cell as is (prior, or the last published value)
class WindowedGrid {
public:
    WindowedGrid() = default;
    WindowedGrid(std::size_t rows, std::size_t cols, std::size_t window, std::vector<NormalDist> priors);

    void record(std::size_t row, std::size_t col, double value);
    void refresh();

    const NormalDist& published(std::size_t row, std::size_t col) const;
    const NormalDist& prior(std::size_t row, std::size_t col) const;
    /// Observations recorded into the cell over its lifetime.
    std::int64_t total_count(std::size_t row, std::size_t col) const;
    std::size_t window_count(std::size_t row, std::size_t col) const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// Lower bound applied to published means.
    void set_mean_floor(std::size_t row, std::size_t col, double floor);
    /// Cells that are pinned never publish observations.
    void pin(std::size_t row, std::size_t col, NormalDist value);

private:
    std::size_t index(std::size_t row, std::size_t col) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t window_ = 1;
    std::vector<NormalDist> priors_;
    std::vector<NormalDist> published_;
    std::vector<double> floors_;
    std::vector<bool> pinned_;
    std::vector<std::deque<double>> windows_;
    std::vector<std::int64_t> totals_;
};

/// Estimated task completion (type x node) and transfer (node x node) times.
///
/// Node indices cover the edge nodes followed by the cloud. ETC cells hold
/// node sojourn time (queue wait + execution); ETT cells hold transfer time
/// and the diagonal is pinned at N(0, 0).
class Estimator {
public:
    Estimator(std::size_t num_types, std::size_t num_nodes, const EstimatorConfig& cfg,
              std::vector<NormalDist> etc_priors, std::vector<NormalDist> ett_priors,
              std::vector<double> ett_floors = {});

    void record_completion(TypeId type, NodeId node, double sojourn);
    void record_transfer(NodeId src, NodeId dst, double elapsed);
    void refresh(double now);

    NormalDist etc_dist(TypeId type, NodeId node) const;
    NormalDist ett_dist(NodeId src, NodeId dst) const;

    const WindowedGrid& etc() const { return etc_; }
    const WindowedGrid& ett() const { return ett_; }
    double last_refresh() const { return last_refresh_; }
    std::size_t num_types() const { return etc_.rows(); }
    std::size_t num_nodes() const { return etc_.cols(); }

private:
    void check_type_node(TypeId type, NodeId node) const;
    void check_pair(NodeId src, NodeId dst) const;

    WindowedGrid etc_;
    WindowedGrid ett_;
    double last_refresh_ = 0.0;
};

/// Warm-start estimator for a platform. `edges` are the federation nodes with
/// ids 0..n-1; the cloud becomes node n.
Estimator make_estimator(std::span<const TaskType> types, std::span<const NodeSpec> edges,
                         const CloudSpec& cloud, const NetworkModel& net, const EstimatorConfig& cfg);

}  // namespace edgefed
