#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgefed/config.hpp"
#include "edgefed/engine.hpp"
#include "edgefed/metrics.hpp"

namespace edgefed {

/// Flags shared by every subcommand that loads a config.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<Heuristic> heuristic;
    std::optional<int> apps;
};

/// CLI flag > config file > built-in default.
void apply_overrides(SimulationConfig& cfg, const Overrides& o);

/// Config path to use when none is given: <config dir>/paper_default.json.
std::filesystem::path resolve_config_path(const std::optional<std::filesystem::path>& given);

struct RunOptions {
    std::filesystem::path config;
    Overrides overrides;
    std::optional<std::filesystem::path> out;            ///< report CSV; stdout when empty
    std::optional<std::filesystem::path> trace;          ///< JSON-lines event trace
    std::optional<std::filesystem::path> dump_workload;  ///< JSON-lines task stream
    std::optional<std::filesystem::path> json;           ///< per-type/per-node detail and matrices
};

RunReport cmd_run(const RunOptions& opts);

struct SweepOptions {
    std::filesystem::path config;
    std::optional<std::uint64_t> seed;
    std::vector<int> apps;
    std::vector<Heuristic> heuristics;
    int replications = 10;
    int parallel = 1;
    std::optional<std::filesystem::path> out;       ///< sweep CSV; stdout when empty
    std::optional<std::filesystem::path> runs_out;  ///< one report row per run
};

struct SweepResult {
    std::vector<RunReport> reports;  ///< heuristic-major, then apps, then replication
    std::vector<SweepRow> rows;
};

/// Seed of one sweep cell. It depends on the load point and replication only,
/// so every heuristic is evaluated on the same workloads.
std::uint64_t sweep_cell_seed(std::uint64_t master, int apps, int replication);

/// Runs every (heuristic, apps, replication) cell on up to `parallel` threads.
SweepResult run_sweep(const SimulationConfig& base, const SweepOptions& opts);
SweepResult cmd_sweep(const SweepOptions& opts);

/// Validates and returns the config; throws ConfigError otherwise.
SimulationConfig cmd_validate(const std::filesystem::path& config);

/// One JSON object per task: id, type, origin, arrival, length, deadline.
std::string workload_jsonl(const SimulationConfig& cfg, std::uint64_t seed);
void cmd_dump_workload(const std::filesystem::path& config, const Overrides& o,
                       const std::optional<std::filesystem::path>& out);

/// Detailed run output: per-type and per-node counts plus final ETC/ETT cells.
std::string run_detail_json(const SimulationConfig& cfg, const SimulationResult& result);

}  // namespace edgefed
