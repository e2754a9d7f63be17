#include "edgefed/commands.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "edgefed/errors.hpp"
#include "edgefed/rng.hpp"

namespace edgefed {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
        throw ConfigError("failed writing '" + path.string() + "'");
    }
}

void emit(const std::optional<std::filesystem::path>& path, const std::string& content) {
    if (path) {
        write_file(*path, content);
    } else {
        std::cout << content;
    }
}

}  // namespace

void apply_overrides(SimulationConfig& cfg, const Overrides& o) {
    if (o.seed) cfg.seed = *o.seed;
    if (o.heuristic) cfg.heuristic = *o.heuristic;
    if (o.apps) cfg.workload.num_applications = *o.apps;
}

std::filesystem::path resolve_config_path(const std::optional<std::filesystem::path>& given) {
    if (given) return *given;
    return default_config_dir() / "paper_default.json";
}

RunReport cmd_run(const RunOptions& opts) {
    auto cfg = parse_and_validate(opts.config);
    apply_overrides(cfg, opts.overrides);
    validate(cfg);

    if (opts.dump_workload) {
        write_file(*opts.dump_workload, workload_jsonl(cfg, cfg.seed));
    }
    std::ostringstream trace;
    auto result = run(cfg, cfg.seed, opts.trace ? &trace : nullptr);
    if (opts.trace) {
        write_file(*opts.trace, trace.str());
    }
    if (opts.json) {
        write_file(*opts.json, run_detail_json(cfg, result));
    }
    emit(opts.out, report_csv_header() + '\n' + report_csv_row(result.report) + '\n');
    return result.report;
}

std::uint64_t sweep_cell_seed(std::uint64_t master, int apps, int replication) {
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(apps)),
                       static_cast<std::uint64_t>(replication));
}

SweepResult run_sweep(const SimulationConfig& base, const SweepOptions& opts) {
    if (opts.apps.empty()) throw ConfigError("sweep: the apps list is empty");
    if (opts.heuristics.empty()) throw ConfigError("sweep: the heuristics list is empty");
    if (opts.replications < 1) throw ConfigError("sweep: replications must be >= 1");
    if (opts.parallel < 1) throw ConfigError("sweep: parallel must be >= 1");
    for (int a : opts.apps) {
        if (a < 0) throw ConfigError("sweep: apps values must be >= 0");
    }
    validate(base);
    const std::uint64_t master = opts.seed.value_or(base.seed);

    struct Cell {
        Heuristic heuristic;
        int apps;
        int rep;
    };
    std::vector<Cell> cells;
    for (auto h : opts.heuristics) {
        for (int a : opts.apps) {
            for (int r = 0; r < opts.replications; ++r) cells.push_back({h, a, r});
        }
    }

    SweepResult result;
    result.reports.resize(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::string failing_cell;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            {
                std::lock_guard lock(error_mutex);
                if (error) return;
            }
            const auto& c = cells[i];
            try {
                SimulationConfig cfg = base;
                cfg.heuristic = c.heuristic;
                cfg.workload.num_applications = c.apps;
                result.reports[i] = run(cfg, sweep_cell_seed(master, c.apps, c.rep)).report;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                    failing_cell = std::string(to_string(c.heuristic)) + ", apps " + std::to_string(c.apps) +
                                   ", replication " + std::to_string(c.rep);
                }
                return;
            }
        }
    };

    const int threads = std::min<int>(opts.parallel, static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const ConfigError& e) {
            throw ConfigError("sweep cell (" + failing_cell + ") failed: " + e.what());
        } catch (const std::exception& e) {
            throw InternalError("sweep cell (" + failing_cell + ") failed: " + e.what());
        }
    }
    result.rows = aggregate_sweep(result.reports);
    return result;
}

SweepResult cmd_sweep(const SweepOptions& opts) {
    const auto cfg = parse_and_validate(opts.config);
    auto result = run_sweep(cfg, opts);
    if (opts.runs_out) {
        write_file(*opts.runs_out, reports_csv(result.reports));
    }
    emit(opts.out, sweep_csv(result.rows));
    return result;
}

SimulationConfig cmd_validate(const std::filesystem::path& config) {
    return parse_and_validate(config);
}

std::string workload_jsonl(const SimulationConfig& cfg, std::uint64_t seed) {
    std::string out;
    for (const auto& t : workload_for_run(cfg, seed)) {
        out += "{\"id\":" + std::to_string(t.id) + ",\"type\":" + std::to_string(t.type_id) +
               ",\"origin\":" + std::to_string(t.origin) + ",\"arrival_s\":" + format_fixed(t.arrival_time, 9) +
               ",\"length_mi\":" + format_fixed(t.length_mi, 6) + ",\"deadline_s\":" + format_fixed(t.deadline, 9) +
               "}\n";
    }
    return out;
}

void cmd_dump_workload(const std::filesystem::path& config, const Overrides& o,
                       const std::optional<std::filesystem::path>& out) {
    auto cfg = parse_and_validate(config);
    apply_overrides(cfg, o);
    validate(cfg);
    emit(out, workload_jsonl(cfg, cfg.seed));
}

std::string run_detail_json(const SimulationConfig& cfg, const SimulationResult& result) {
    using json = nlohmann::ordered_json;
    const auto& r = result.report;
    json root;
    root["heuristic"] = r.heuristic;
    root["num_apps"] = r.num_applications;
    root["seed"] = r.seed;
    root["tasks_total"] = r.tasks_total;
    root["tasks_completed"] = r.tasks_completed;
    root["tasks_dropped"] = r.tasks_dropped;
    root["misses"] = r.misses_total;
    root["miss_rate"] = r.miss_rate;
    json per_type = json::array();
    for (std::size_t i = 0; i < r.per_type.size(); ++i) {
        per_type.push_back({{"type", cfg.task_types[i].name},
                            {"count", r.per_type[i].count},
                            {"misses", r.per_type[i].misses},
                            {"miss_rate", r.per_type[i].miss_rate}});
    }
    root["per_type"] = per_type;
    json per_node = json::array();
    for (std::size_t i = 0; i < r.per_node.size(); ++i) {
        per_node.push_back({{"node", i == cfg.nodes.size() ? json("cloud") : json(i)},
                            {"executed", r.per_node[i].executed},
                            {"misses", r.per_node[i].misses}});
    }
    root["per_node"] = per_node;

    const auto& est = result.estimator;
    json etc = json::array();
    for (std::size_t t = 0; t < est.etc().rows(); ++t) {
        for (std::size_t n = 0; n < est.etc().cols(); ++n) {
            const auto& d = est.etc().published(t, n);
            etc.push_back({{"type", t}, {"node", n}, {"mean", d.mean}, {"stddev", d.stddev},
                           {"count", est.etc().total_count(t, n)}});
        }
    }
    json ett = json::array();
    for (std::size_t s = 0; s < est.ett().rows(); ++s) {
        for (std::size_t d = 0; d < est.ett().cols(); ++d) {
            const auto& x = est.ett().published(s, d);
            ett.push_back({{"src", s}, {"dst", d}, {"mean", x.mean}, {"stddev", x.stddev},
                           {"count", est.ett().total_count(s, d)}});
        }
    }
    root["etc"] = etc;
    root["ett"] = ett;
    return root.dump(2) + "\n";
}

}  // namespace edgefed
