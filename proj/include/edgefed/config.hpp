#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgefed/estimator.hpp"
#include "edgefed/heuristics.hpp"
#include "edgefed/platform.hpp"
#include "edgefed/task_model.hpp"
#include "edgefed/workload.hpp"

namespace edgefed {

inline constexpr int kSchemaVersion = 1;

struct SimulationConfig {
    int schema_version = kSchemaVersion;
    std::uint64_t seed = 1;
    Heuristic heuristic = Heuristic::hps;
    std::vector<NodeSpec> nodes;
    CloudSpec cloud;
    NetworkModel network;
    std::vector<TaskType> task_types;
    WorkloadSpec workload;
    EstimatorConfig estimator;
};

/// Checks every invariant of the config and its embedded types; throws
/// ConfigError naming the first offending key.
void validate(const SimulationConfig& cfg);

/// Built-in defaults. Edge MIPS are drawn uniformly from [1500, 2500] with
/// `mips_seed` and then frozen into the returned config.
SimulationConfig default_config(std::uint64_t mips_seed = 2019);

/// Parses JSON text; keys absent from the text keep their default_config() value.
SimulationConfig parse_config(const std::string& text);
/// Reads, parses and validates. Missing files and parse errors throw ConfigError.
SimulationConfig parse_and_validate(const std::filesystem::path& path);

std::string to_json(const SimulationConfig& cfg);

/// Directory holding shipped configs: $EDGEFED_CONFIG_DIR if set, else "configs".
std::filesystem::path default_config_dir();

}  // namespace edgefed
