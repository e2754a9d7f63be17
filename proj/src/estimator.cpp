#include "edgefed/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgefed/errors.hpp"

namespace edgefed {

void validate(const EstimatorConfig& cfg) {
    if (cfg.window < 1) {
        throw ConfigError("estimator.window must be >= 1");
    }
    if (!(cfg.refresh_period_s > 0.0) || !std::isfinite(cfg.refresh_period_s)) {
        throw ConfigError("estimator.refresh_period_s must be > 0");
    }
    if (!(cfg.etc_prior_queue_factor > 0.0) || !std::isfinite(cfg.etc_prior_queue_factor)) {
        throw ConfigError("estimator.etc_prior_queue_factor must be > 0");
    }
    if (!(cfg.etc_prior_rel_stddev >= 0.0) || !std::isfinite(cfg.etc_prior_rel_stddev)) {
        throw ConfigError("estimator.etc_prior_rel_stddev must be >= 0");
    }
    if (!(cfg.ett_prior_rel_stddev >= 0.0) || !std::isfinite(cfg.ett_prior_rel_stddev)) {
        throw ConfigError("estimator.ett_prior_rel_stddev must be >= 0");
    }
}

WindowedGrid::WindowedGrid(std::size_t rows, std::size_t cols, std::size_t window,
                           std::vector<NormalDist> priors)
    : rows_(rows),
      cols_(cols),
      window_(window),
      priors_(std::move(priors)),
      published_(priors_),
      floors_(rows * cols, 0.0),
      pinned_(rows * cols, false),
      windows_(rows * cols),
      totals_(rows * cols, 0) {
    if (priors_.size() != rows * cols) {
        throw InternalError("WindowedGrid: prior count does not match grid size");
    }
    if (window_ < 1) {
        throw InternalError("WindowedGrid: window must be >= 1");
    }
}

std::size_t WindowedGrid::index(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) {
        throw InternalError("WindowedGrid: cell (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") out of range");
    }
    return row * cols_ + col;
}

void WindowedGrid::record(std::size_t row, std::size_t col, double value) {
    const auto i = index(row, col);
    auto& w = windows_[i];
    w.push_back(value);
    if (w.size() > window_) {
        w.pop_front();
    }
    ++totals_[i];
}

void WindowedGrid::refresh() {
    for (std::size_t i = 0; i < published_.size(); ++i) {
        const auto& w = windows_[i];
        if (pinned_[i] || w.empty()) {
            continue;
        }
        NormalDist next;
        if (w.size() == 1) {
            next = {w.front(), priors_[i].stddev};
        } else {
            OnlineStat acc;
            for (double x : w) {
                acc = welford_update(acc, x);
            }
            next = to_dist(acc);
        }
        next.mean = std::max(next.mean, floors_[i]);
        published_[i] = next;
    }
}

const NormalDist& WindowedGrid::published(std::size_t row, std::size_t col) const {
    return published_[index(row, col)];
}

const NormalDist& WindowedGrid::prior(std::size_t row, std::size_t col) const {
    return priors_[index(row, col)];
}

std::int64_t WindowedGrid::total_count(std::size_t row, std::size_t col) const {
    return totals_[index(row, col)];
}

std::size_t WindowedGrid::window_count(std::size_t row, std::size_t col) const {
    return windows_[index(row, col)].size();
}

void WindowedGrid::set_mean_floor(std::size_t row, std::size_t col, double floor) {
    const auto i = index(row, col);
    floors_[i] = floor;
    published_[i].mean = std::max(published_[i].mean, floor);
}

void WindowedGrid::pin(std::size_t row, std::size_t col, NormalDist value) {
    const auto i = index(row, col);
    pinned_[i] = true;
    priors_[i] = value;
    published_[i] = value;
}

Estimator::Estimator(std::size_t num_types, std::size_t num_nodes, const EstimatorConfig& cfg,
                     std::vector<NormalDist> etc_priors, std::vector<NormalDist> ett_priors,
                     std::vector<double> ett_floors)
    : etc_(num_types, num_nodes, cfg.window, std::move(etc_priors)),
      ett_(num_nodes, num_nodes, cfg.window, std::move(ett_priors)) {
    validate(cfg);
    if (!ett_floors.empty() && ett_floors.size() != num_nodes * num_nodes) {
        throw InternalError("Estimator: ETT floor count does not match grid size");
    }
    for (std::size_t s = 0; s < num_nodes; ++s) {
        for (std::size_t d = 0; d < num_nodes; ++d) {
            if (s == d) {
                ett_.pin(s, d, {0.0, 0.0});
            } else if (!ett_floors.empty()) {
                ett_.set_mean_floor(s, d, ett_floors[s * num_nodes + d]);
            }
        }
    }
}

void Estimator::check_type_node(TypeId type, NodeId node) const {
    if (type < 0 || static_cast<std::size_t>(type) >= etc_.rows() || node < 0 ||
        static_cast<std::size_t>(node) >= etc_.cols()) {
        throw InternalError("Estimator: bad ETC index (type " + std::to_string(type) + ", node " +
                            std::to_string(node) + ")");
    }
}

void Estimator::check_pair(NodeId src, NodeId dst) const {
    if (src < 0 || dst < 0 || static_cast<std::size_t>(src) >= ett_.rows() ||
        static_cast<std::size_t>(dst) >= ett_.cols()) {
        throw InternalError("Estimator: bad ETT index (" + std::to_string(src) + ", " +
                            std::to_string(dst) + ")");
    }
}

void Estimator::record_completion(TypeId type, NodeId node, double sojourn) {
    check_type_node(type, node);
    if (!(sojourn > 0.0) || !std::isfinite(sojourn)) {
        throw InternalError("record_completion: sojourn must be positive");
    }
    etc_.record(static_cast<std::size_t>(type), static_cast<std::size_t>(node), sojourn);
}

void Estimator::record_transfer(NodeId src, NodeId dst, double elapsed) {
    check_pair(src, dst);
    if (src == dst) {
        throw InternalError("record_transfer: source equals destination");
    }
    if (!(elapsed >= 0.0) || !std::isfinite(elapsed)) {
        throw InternalError("record_transfer: elapsed must be >= 0");
    }
    ett_.record(static_cast<std::size_t>(src), static_cast<std::size_t>(dst), elapsed);
}

void Estimator::refresh(double now) {
    etc_.refresh();
    ett_.refresh();
    last_refresh_ = now;
}

NormalDist Estimator::etc_dist(TypeId type, NodeId node) const {
    check_type_node(type, node);
    return etc_.published(static_cast<std::size_t>(type), static_cast<std::size_t>(node));
}

NormalDist Estimator::ett_dist(NodeId src, NodeId dst) const {
    check_pair(src, dst);
    return ett_.published(static_cast<std::size_t>(src), static_cast<std::size_t>(dst));
}

namespace {

double mean_input_kb(std::span<const TaskType> types, Urgency which) {
    double sum = 0.0;
    int n = 0;
    for (const auto& t : types) {
        if (t.urgency == which) {
            sum += t.input_kb;
            ++n;
        }
    }
    if (n == 0) {
        for (const auto& t : types) {
            sum += t.input_kb;
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / n;
}

}  // namespace

Estimator make_estimator(std::span<const TaskType> types, std::span<const NodeSpec> edges,
                         const CloudSpec& cloud, const NetworkModel& net, const EstimatorConfig& cfg) {
    validate(cfg);
    const std::size_t num_nodes = edges.size() + 1;
    const std::size_t cloud_index = edges.size();

    std::vector<NormalDist> etc_priors;
    etc_priors.reserve(types.size() * num_nodes);
    for (const auto& t : types) {
        for (std::size_t j = 0; j < num_nodes; ++j) {
            const double mips = j == cloud_index ? cloud.mips : edges[j].mips;
            const double exec = t.length_mi.mean / mips;
            etc_priors.push_back({cfg.etc_prior_queue_factor * exec, cfg.etc_prior_rel_stddev * exec});
        }
    }

    const double wlan_kb = mean_input_kb(types, Urgency::urgent);
    const double sat_kb = mean_input_kb(types, Urgency::tolerant);
    std::vector<NormalDist> ett_priors;
    std::vector<double> floors;
    ett_priors.reserve(num_nodes * num_nodes);
    floors.reserve(num_nodes * num_nodes);
    for (std::size_t s = 0; s < num_nodes; ++s) {
        for (std::size_t d = 0; d < num_nodes; ++d) {
            const bool satellite = s == cloud_index || d == cloud_index;
            double base = std::max(transfer_base_time(net, satellite ? sat_kb : wlan_kb, satellite),
                                   net.min_transfer_s);
            if (s == d) {
                base = 0.0;
            }
            ett_priors.push_back({base, cfg.ett_prior_rel_stddev * base});
            floors.push_back(satellite ? std::max(net.sat_propagation_s, net.min_transfer_s)
                                       : net.min_transfer_s);
        }
    }
    return Estimator(types.size(), num_nodes, cfg, std::move(etc_priors), std::move(ett_priors),
                     std::move(floors));
}

}  // namespace edgefed
