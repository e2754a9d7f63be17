#include "edgefed/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <ostream>
#include <queue>
#include <string>

#include "edgefed/errors.hpp"
#include "edgefed/heuristics.hpp"
#include "edgefed/rng.hpp"
#include "edgefed/workload.hpp"

namespace edgefed {

std::string_view to_string(EventKind k) {
    switch (k) {
    case EventKind::task_arrival: return "task_arrival";
    case EventKind::transfer_complete: return "transfer_complete";
    case EventKind::exec_complete: return "exec_complete";
    case EventKind::matrix_refresh: return "matrix_refresh";
    case EventKind::end_of_run: return "end_of_run";
    }
    return "?";
}

double expected_transfer_time(double base, double jitter_stddev, double min_transfer) {
    if (jitter_stddev == 0.0) {
        return std::max(base, min_transfer);
    }
    if (base >= min_transfer) {
        return base + jitter_stddev * std::sqrt(2.0 / M_PI);
    }
    // E[max(base + |X|, m)] with X ~ N(0, s^2) and c = m - base > 0.
    const double c = (min_transfer - base) / jitter_stddev;
    const double below = 2.0 * normal_cdf(c) - 1.0;
    const double pdf = std::exp(-0.5 * c * c) / std::sqrt(2.0 * M_PI);
    return min_transfer * below + base * (1.0 - below) + 2.0 * jitter_stddev * pdf;
}

namespace {

// Stream ids under the run seed. Execution time is deterministic
// (length / mips), so stream 3 is reserved for execution noise but unused.
constexpr std::uint64_t kWorkloadStream = 1;
constexpr std::uint64_t kTransferStream = 2;

double mean_transfer(const NetworkModel& net, const TaskType& type, bool satellite) {
    const double base = transfer_base_time(net, type.input_kb, satellite);
    return expected_transfer_time(base, satellite ? net.sat_jitter_stddev_s : net.wlan_jitter_stddev_s,
                                  net.min_transfer_s);
}

}  // namespace

DeadlinePlanner::DeadlinePlanner(const SimulationConfig& cfg) : num_edges_(cfg.nodes.size()) {
    for (const auto& type : cfg.task_types) {
        const double avg = avg_completion_over_edges(type, cfg.nodes);
        for (std::size_t origin = 0; origin < num_edges_; ++origin) {
            double comm = 0.0;
            if (type.urgency == Urgency::tolerant) {
                comm = mean_transfer(cfg.network, type, true);
            } else if (num_edges_ > 1) {
                // Every edge pair shares the same WLAN model, so the tier mean
                // equals the single-link mean.
                comm = mean_transfer(cfg.network, type, false);
            }
            d_comm_.push_back(comm);
            relative_.push_back(assign_deadline(0.0, type, avg, comm));
        }
    }
}

double DeadlinePlanner::relative_deadline(TypeId type, NodeId origin) const {
    return relative_.at(static_cast<std::size_t>(type) * num_edges_ + static_cast<std::size_t>(origin));
}

double DeadlinePlanner::d_comm(TypeId type, NodeId origin) const {
    return d_comm_.at(static_cast<std::size_t>(type) * num_edges_ + static_cast<std::size_t>(origin));
}

namespace {

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.sequence > b.sequence;
    }
};

struct NodeRuntime {
    double mips = 0.0;
    int cores = 1;
    int busy = 0;
    std::deque<std::int64_t> fifo;
};

void write_number(std::ostream& out, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 9);
    out.write(buf, res.ptr - buf);
}

class Simulation {
public:
    Simulation(const SimulationConfig& cfg, std::vector<Task> tasks, std::uint64_t seed, std::ostream* trace)
        : cfg_(cfg),
          tasks_(std::move(tasks)),
          planner_(cfg),
          estimator_(make_estimator(cfg.task_types, cfg.nodes, cfg.cloud, cfg.network, cfg.estimator)),
          metrics_(type_urgency(cfg), cfg.nodes.size() + 1, static_cast<std::int64_t>(tasks_.size())),
          transfer_rng_(derive_seed(seed, kTransferStream)),
          trace_(trace),
          seed_(seed) {
        for (const auto& n : cfg.nodes) {
            nodes_.push_back({n.mips, n.cores, 0, {}});
            edge_ids_.push_back(n.id);
        }
        cloud_ = static_cast<NodeId>(cfg.nodes.size());
        nodes_.push_back({cfg.cloud.mips, cfg.cloud.cores, 0, {}});
        arrival_at_node_.assign(tasks_.size(), 0.0);
        target_.assign(tasks_.size(), -1);
        outcomes_.resize(tasks_.size());
    }

    SimulationResult execute() {
        for (std::size_t i = 0; i < tasks_.size(); ++i) {
            const auto& t = tasks_[i];
            if (i > 0 && t.arrival_time < tasks_[i - 1].arrival_time) {
                throw ConfigError("task stream must be sorted by arrival time");
            }
            if (t.type_id < 0 || static_cast<std::size_t>(t.type_id) >= cfg_.task_types.size()) {
                throw ConfigError("task " + std::to_string(t.id) + " has unknown type");
            }
            if (t.origin < 0 || static_cast<std::size_t>(t.origin) >= cfg_.nodes.size()) {
                throw ConfigError("task " + std::to_string(t.id) + " has unknown origin node");
            }
            if (!(t.length_mi > 0.0)) {
                throw ConfigError("task " + std::to_string(t.id) + " has non-positive length");
            }
            push(t.arrival_time, EventKind::task_arrival, static_cast<std::int64_t>(i));
        }
        if (tasks_.empty()) {
            push(0.0, EventKind::end_of_run, -1);
        } else {
            push(cfg_.estimator.refresh_period_s, EventKind::matrix_refresh, -1);
        }

        while (!queue_.empty()) {
            const Event ev = queue_.top();
            queue_.pop();
            if (ev.time < now_) {
                throw InternalError("event scheduled in the past");
            }
            now_ = ev.time;
            trace(ev);
            switch (ev.kind) {
            case EventKind::task_arrival: handle_arrival(ev.task); break;
            case EventKind::transfer_complete: handle_transfer_complete(ev.task); break;
            case EventKind::exec_complete: handle_exec_complete(ev.task); break;
            case EventKind::matrix_refresh: handle_matrix_refresh(); break;
            case EventKind::end_of_run: finish_queue(); break;
            }
        }

        SimulationResult result{
            metrics_.finalize(std::string(to_string(cfg_.heuristic)), cfg_.workload.num_applications, seed_),
            std::move(outcomes_), std::move(estimator_)};
        return result;
    }

private:
    static std::vector<Urgency> type_urgency(const SimulationConfig& cfg) {
        std::vector<Urgency> u;
        for (const auto& t : cfg.task_types) u.push_back(t.urgency);
        return u;
    }

    void push(double time, EventKind kind, std::int64_t task) {
        queue_.push({time, next_sequence_++, kind, task});
    }

    void set_state(Task& t, TaskState next) {
        if (!is_valid_transition(t.state, next)) {
            throw InternalError("task " + std::to_string(t.id) + ": illegal transition " +
                                std::string(to_string(t.state)) + " -> " + std::string(to_string(next)));
        }
        t.state = next;
    }

    void trace(const Event& ev) {
        if (trace_ == nullptr) return;
        auto& out = *trace_;
        out << "{\"time\":";
        write_number(out, ev.time);
        out << ",\"kind\":\"" << to_string(ev.kind) << "\",\"task\":";
        if (ev.task >= 0) {
            out << tasks_[static_cast<std::size_t>(ev.task)].id;
        } else {
            out << "null";
        }
        out << ",\"node\":";
        NodeId node = -1;
        if (ev.kind == EventKind::task_arrival) {
            node = tasks_[static_cast<std::size_t>(ev.task)].origin;
        } else if (ev.kind == EventKind::transfer_complete || ev.kind == EventKind::exec_complete) {
            node = target_[static_cast<std::size_t>(ev.task)];
        }
        if (node >= 0) {
            out << node;
        } else {
            out << "null";
        }
        out << "}\n";
    }

    double sample_transfer(const TaskType& type, bool satellite) {
        const auto& net = cfg_.network;
        const double base = transfer_base_time(net, type.input_kb, satellite);
        const double jitter = satellite ? net.sat_jitter_stddev_s : net.wlan_jitter_stddev_s;
        const double noise = jitter > 0.0 ? std::abs(transfer_rng_.normal(0.0, jitter)) : 0.0;
        return std::max(base + noise, net.min_transfer_s);
    }

    void handle_arrival(std::int64_t idx) {
        auto& task = tasks_[static_cast<std::size_t>(idx)];
        const auto& type = cfg_.task_types[static_cast<std::size_t>(task.type_id)];
        task.deadline = now_ + planner_.relative_deadline(task.type_id, task.origin);

        auto& out = outcomes_[static_cast<std::size_t>(idx)];
        out.id = task.id;
        out.type = task.type_id;
        out.origin = task.origin;
        out.arrival = task.arrival_time;
        out.deadline = task.deadline;

        if (route_by_urgency(type) == Route::cloud) {
            dispatch_remote(idx, cloud_, sample_transfer(type, true));
            return;
        }
        const auto decision = select(cfg_.heuristic, task, edge_ids_, task.origin, estimator_, now_);
        if (decision.dropped) {
            set_state(task, TaskState::dropped);
            out.dropped = true;
            out.missed = true;
            metrics_.record_outcome(task, std::nullopt, -1);
            on_terminal();
            return;
        }
        const NodeId target = *decision.target;
        if (target == task.origin) {
            target_[static_cast<std::size_t>(idx)] = target;
            set_state(task, TaskState::queued);
            enqueue(idx, target);
        } else {
            dispatch_remote(idx, target, sample_transfer(type, false));
        }
    }

    void dispatch_remote(std::int64_t idx, NodeId target, double transfer) {
        auto& task = tasks_[static_cast<std::size_t>(idx)];
        target_[static_cast<std::size_t>(idx)] = target;
        set_state(task, TaskState::transferring);
        push(now_ + transfer, EventKind::transfer_complete, idx);
    }

    void handle_transfer_complete(std::int64_t idx) {
        auto& task = tasks_[static_cast<std::size_t>(idx)];
        const NodeId target = target_[static_cast<std::size_t>(idx)];
        estimator_.record_transfer(task.origin, target, now_ - task.arrival_time);
        set_state(task, TaskState::queued);
        enqueue(idx, target);
    }

    void enqueue(std::int64_t idx, NodeId node_id) {
        arrival_at_node_[static_cast<std::size_t>(idx)] = now_;
        auto& node = nodes_[static_cast<std::size_t>(node_id)];
        if (node.busy < node.cores) {
            start(idx, node);
        } else {
            node.fifo.push_back(idx);
        }
    }

    void start(std::int64_t idx, NodeRuntime& node) {
        auto& task = tasks_[static_cast<std::size_t>(idx)];
        ++node.busy;
        set_state(task, TaskState::executing);
        push(now_ + task.length_mi / node.mips, EventKind::exec_complete, idx);
    }

    void handle_exec_complete(std::int64_t idx) {
        auto& task = tasks_[static_cast<std::size_t>(idx)];
        const NodeId node_id = target_[static_cast<std::size_t>(idx)];
        auto& node = nodes_[static_cast<std::size_t>(node_id)];
        --node.busy;
        set_state(task, TaskState::completed);

        estimator_.record_completion(task.type_id, node_id, now_ - arrival_at_node_[static_cast<std::size_t>(idx)]);
        metrics_.record_outcome(task, now_, node_id);
        auto& out = outcomes_[static_cast<std::size_t>(idx)];
        out.target = node_id;
        out.completion = now_;
        out.missed = now_ > task.deadline;

        if (!node.fifo.empty()) {
            const auto next = node.fifo.front();
            node.fifo.pop_front();
            start(next, node);
        }
        on_terminal();
    }

    void handle_matrix_refresh() {
        estimator_.refresh(now_);
        if (terminal_ < static_cast<std::int64_t>(tasks_.size())) {
            push(now_ + cfg_.estimator.refresh_period_s, EventKind::matrix_refresh, -1);
        }
    }

    void on_terminal() {
        if (++terminal_ == static_cast<std::int64_t>(tasks_.size())) {
            push(now_, EventKind::end_of_run, -1);
        }
    }

    // Only a pending refresh tick may outlive the last task.
    void finish_queue() {
        while (!queue_.empty()) {
            if (queue_.top().kind != EventKind::matrix_refresh) {
                throw InternalError("end_of_run with task events still pending");
            }
            queue_.pop();
        }
        for (const auto& t : tasks_) {
            if (t.state != TaskState::completed && t.state != TaskState::dropped) {
                throw InternalError("task " + std::to_string(t.id) + " not terminal at end of run");
            }
        }
    }

    const SimulationConfig& cfg_;
    std::vector<Task> tasks_;
    DeadlinePlanner planner_;
    Estimator estimator_;
    MetricsRecorder metrics_;
    Rng transfer_rng_;
    std::ostream* trace_;
    std::uint64_t seed_;

    std::priority_queue<Event, std::vector<Event>, EventLater> queue_;
    std::uint64_t next_sequence_ = 0;
    double now_ = 0.0;
    std::int64_t terminal_ = 0;

    std::vector<NodeRuntime> nodes_;
    std::vector<NodeId> edge_ids_;
    NodeId cloud_ = 0;
    std::vector<double> arrival_at_node_;
    std::vector<NodeId> target_;
    std::vector<TaskOutcome> outcomes_;
};

}  // namespace

SimulationResult simulate(const SimulationConfig& cfg, std::vector<Task> tasks, std::uint64_t seed,
                          std::ostream* trace) {
    validate(cfg);
    Simulation sim(cfg, std::move(tasks), seed, trace);
    return sim.execute();
}

std::vector<Task> workload_for_run(const SimulationConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    auto tasks = generate(cfg.workload, cfg.task_types, static_cast<int>(cfg.nodes.size()),
                          derive_seed(seed, kWorkloadStream));
    const DeadlinePlanner planner(cfg);
    for (auto& t : tasks) {
        t.deadline = t.arrival_time + planner.relative_deadline(t.type_id, t.origin);
    }
    return tasks;
}

SimulationResult run(const SimulationConfig& cfg, std::uint64_t seed, std::ostream* trace) {
    validate(cfg);
    auto tasks = generate(cfg.workload, cfg.task_types, static_cast<int>(cfg.nodes.size()),
                          derive_seed(seed, kWorkloadStream));
    return simulate(cfg, std::move(tasks), seed, trace);
}

}  // namespace edgefed
