#include "edgefed/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "edgefed/errors.hpp"

namespace edgefed {

MetricsRecorder::MetricsRecorder(std::vector<Urgency> type_urgency, std::size_t num_nodes,
                                 std::int64_t num_tasks)
    : urgency_(std::move(type_urgency)),
      seen_(static_cast<std::size_t>(num_tasks), false),
      per_type_(urgency_.size()),
      per_node_(num_nodes) {}

void MetricsRecorder::record_outcome(const Task& task, std::optional<double> completion, NodeId node) {
    if (task.id < 0 || static_cast<std::size_t>(task.id) >= seen_.size()) {
        throw InternalError("record_outcome: task id " + std::to_string(task.id) + " out of range");
    }
    if (seen_[static_cast<std::size_t>(task.id)]) {
        throw InternalError("record_outcome: task " + std::to_string(task.id) + " recorded twice");
    }
    if (task.type_id < 0 || static_cast<std::size_t>(task.type_id) >= per_type_.size()) {
        throw InternalError("record_outcome: bad type id");
    }
    seen_[static_cast<std::size_t>(task.id)] = true;
    ++recorded_;

    const bool miss = !completion || *completion > task.deadline;
    const int cls = urgency_[static_cast<std::size_t>(task.type_id)] == Urgency::urgent ? 0 : 1;
    auto& ts = per_type_[static_cast<std::size_t>(task.type_id)];
    ++ts.count;
    ++class_count_[cls];
    if (miss) {
        ++ts.misses;
        ++class_misses_[cls];
    }
    if (!completion) {
        ++dropped_;
        return;
    }
    if (node < 0 || static_cast<std::size_t>(node) >= per_node_.size()) {
        throw InternalError("record_outcome: bad node id");
    }
    ++completed_;
    auto& ns = per_node_[static_cast<std::size_t>(node)];
    ++ns.executed;
    if (miss) ++ns.misses;
    response_sum_[cls] += *completion - task.arrival_time;
    ++response_n_[cls];
}

namespace {

double ratio(std::int64_t num, std::int64_t den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

RunReport MetricsRecorder::finalize(std::string heuristic, int num_applications, std::uint64_t seed) const {
    RunReport r;
    r.heuristic = std::move(heuristic);
    r.num_applications = num_applications;
    r.seed = seed;
    r.tasks_total = static_cast<std::int64_t>(seen_.size());
    r.tasks_completed = completed_;
    r.tasks_dropped = dropped_;
    if (recorded_ != r.tasks_total || completed_ + dropped_ != r.tasks_total) {
        throw InternalError("finalize: conservation violated (" + std::to_string(r.tasks_total) + " generated, " +
                            std::to_string(completed_) + " completed, " + std::to_string(dropped_) +
                            " dropped)");
    }
    r.per_type = per_type_;
    std::int64_t type_sum = 0;
    for (auto& ts : r.per_type) {
        ts.miss_rate = ratio(ts.misses, ts.count);
        type_sum += ts.count;
        r.misses_total += ts.misses;
    }
    if (type_sum != r.tasks_total) {
        throw InternalError("finalize: per-type counts do not sum to tasks_total");
    }
    r.per_node = per_node_;
    r.miss_rate = ratio(r.misses_total, r.tasks_total);
    r.miss_rate_urgent = ratio(class_misses_[0], class_count_[0]);
    r.miss_rate_tolerant = ratio(class_misses_[1], class_count_[1]);
    r.mean_completion_urgent = response_n_[0] > 0 ? response_sum_[0] / static_cast<double>(response_n_[0]) : 0.0;
    r.mean_completion_tolerant =
        response_n_[1] > 0 ? response_sum_[1] / static_cast<double>(response_n_[1]) : 0.0;
    return r;
}

std::vector<SweepRow> aggregate_sweep(std::span<const RunReport> reports) {
    // Sorting the miss rates inside each cell makes the sums independent of input order.
    std::map<std::tuple<std::string, int>, std::vector<double>> cells;
    for (const auto& r : reports) {
        cells[{r.heuristic, r.num_applications}].push_back(r.miss_rate);
    }
    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    for (auto& [key, rates] : cells) {
        std::sort(rates.begin(), rates.end());
        SweepRow row;
        row.heuristic = std::get<0>(key);
        row.num_applications = std::get<1>(key);
        row.replications = static_cast<std::int64_t>(rates.size());
        double sum = 0.0;
        for (double x : rates) sum += x;
        row.miss_rate_mean = sum / static_cast<double>(rates.size());
        if (rates.size() > 1) {
            double ss = 0.0;
            for (double x : rates) ss += (x - row.miss_rate_mean) * (x - row.miss_rate_mean);
            row.miss_rate_stddev = std::sqrt(ss / static_cast<double>(rates.size() - 1));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_fixed(double value, int decimals) {
    char buf[128];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    std::string s(buf, res.ptr);
    if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);  // no "-0.000000"
    }
    return s;
}

std::string report_csv_header() {
    return "heuristic,num_apps,seed,tasks_total,misses,dropped,miss_rate,miss_rate_urgent,miss_rate_tolerant,"
           "mean_completion_urgent_s,mean_completion_tolerant_s";
}

std::string report_csv_row(const RunReport& r) {
    std::string s;
    s += r.heuristic;
    s += ',' + std::to_string(r.num_applications);
    s += ',' + std::to_string(r.seed);
    s += ',' + std::to_string(r.tasks_total);
    s += ',' + std::to_string(r.misses_total);
    s += ',' + std::to_string(r.tasks_dropped);
    s += ',' + format_fixed(r.miss_rate);
    s += ',' + format_fixed(r.miss_rate_urgent);
    s += ',' + format_fixed(r.miss_rate_tolerant);
    s += ',' + format_fixed(r.mean_completion_urgent);
    s += ',' + format_fixed(r.mean_completion_tolerant);
    return s;
}

std::string reports_csv(std::span<const RunReport> reports) {
    std::string out = report_csv_header() + '\n';
    for (const auto& r : reports) out += report_csv_row(r) + '\n';
    return out;
}

std::string sweep_csv_header() {
    return "heuristic,num_apps,replications,miss_rate_mean,miss_rate_stddev";
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = sweep_csv_header() + '\n';
    for (const auto& r : rows) {
        out += r.heuristic + ',' + std::to_string(r.num_applications) + ',' + std::to_string(r.replications) +
               ',' + format_fixed(r.miss_rate_mean) + ',' + format_fixed(r.miss_rate_stddev) + '\n';
    }
    return out;
}

}  // namespace edgefed
