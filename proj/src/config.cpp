#include "edgefed/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "edgefed/errors.hpp"
#include "edgefed/rng.hpp"

namespace edgefed {

using json = nlohmann::ordered_json;

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool finite_positive(double x) {
    return std::isfinite(x) && x > 0.0;
}

}  // namespace

void validate(const SimulationConfig& cfg) {
    require(cfg.schema_version == kSchemaVersion,
            "schema_version: expected " + std::to_string(kSchemaVersion) + ", got " +
                std::to_string(cfg.schema_version));
    require(!cfg.nodes.empty(), "nodes: at least one edge node is required");
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
        const auto& n = cfg.nodes[i];
        const std::string where = "nodes[" + std::to_string(i) + "]";
        require(n.id == static_cast<NodeId>(i), where + ".id must equal its position (" + std::to_string(i) + ")");
        require(finite_positive(n.mips), where + ".mips must be > 0 (got " + std::to_string(n.mips) + ")");
        require(n.cores >= 1, where + ".cores must be >= 1");
    }
    require(finite_positive(cfg.cloud.mips), "cloud.mips must be > 0");
    require(cfg.cloud.cores >= 1, "cloud.cores must be >= 1");

    const auto& net = cfg.network;
    require(finite_positive(net.wlan_bandwidth_bps), "network.wlan_bandwidth_bps must be > 0");
    require(finite_positive(net.sat_bandwidth_bps), "network.sat_bandwidth_bps must be > 0");
    require(std::isfinite(net.sat_propagation_s) && net.sat_propagation_s >= 0.0,
            "network.sat_propagation_s must be >= 0");
    require(std::isfinite(net.wlan_jitter_stddev_s) && net.wlan_jitter_stddev_s >= 0.0,
            "network.wlan_jitter_stddev_s must be >= 0");
    require(std::isfinite(net.sat_jitter_stddev_s) && net.sat_jitter_stddev_s >= 0.0,
            "network.sat_jitter_stddev_s must be >= 0");
    require(finite_positive(net.min_transfer_s), "network.min_transfer_s must be > 0");

    require(!cfg.task_types.empty(), "task_types: at least one task type is required");
    for (std::size_t i = 0; i < cfg.task_types.size(); ++i) {
        require(cfg.task_types[i].id == static_cast<TypeId>(i),
                "task_types[" + std::to_string(i) + "].id must equal its position");
        validate(cfg.task_types[i]);
    }
    validate(cfg.workload, cfg.task_types);
    validate(cfg.estimator);
}

SimulationConfig default_config(std::uint64_t mips_seed) {
    SimulationConfig cfg;
    Rng rng(mips_seed);
    for (NodeId i = 0; i < 6; ++i) {
        // Whole MIPS keep the frozen config file readable.
        cfg.nodes.push_back({i, std::round(rng.uniform(1500.0, 2500.0)), 8});
    }
    cfg.cloud = {40000.0, 8};
    cfg.network = {200e6, 0.3, 20e6, 0.57, 0.05, 0.001};
    cfg.task_types = default_task_types();
    cfg.workload.type_mix = {0.3, 0.3, 0.2, 0.2};
    cfg.workload.burst = Burst{120.0, 60.0, 3.0};
    return cfg;
}

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

template <typename T>
void read(const json& obj, const char* key, const std::string& path, T& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        out = it->template get<T>();
    } catch (const json::exception&) {
        throw ConfigError(join(path, key) + ": wrong value type");
    }
}

const json& section(const json& obj, const char* key, const std::string& path) {
    const auto& s = obj.at(key);
    if (!s.is_object()) throw ConfigError(join(path, key) + ": expected an object");
    return s;
}

void read_dist(const json& obj, const char* key, const std::string& path, NormalDist& out) {
    if (!obj.contains(key)) return;
    const auto& s = section(obj, key, path);
    read(s, "mean", join(path, key), out.mean);
    read(s, "stddev", join(path, key), out.stddev);
}

Urgency parse_urgency(const std::string& s, const std::string& path) {
    if (s == "urgent") return Urgency::urgent;
    if (s == "tolerant") return Urgency::tolerant;
    throw ConfigError(path + ": unknown urgency '" + s + "' (valid: urgent, tolerant)");
}

}  // namespace

SimulationConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");

    SimulationConfig cfg = default_config();
    read(root, "schema_version", "", cfg.schema_version);
    read(root, "seed", "", cfg.seed);
    if (root.contains("heuristic")) {
        std::string name;
        read(root, "heuristic", "", name);
        cfg.heuristic = parse_heuristic(name);
    }

    if (root.contains("nodes")) {
        const auto& arr = root.at("nodes");
        if (!arr.is_array()) throw ConfigError("nodes: expected an array");
        cfg.nodes.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "nodes[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) throw ConfigError(path + ": expected an object");
            NodeSpec n{static_cast<NodeId>(i), 0.0, 8};
            read(arr[i], "id", path, n.id);
            if (!arr[i].contains("mips")) throw ConfigError(path + ".mips: missing");
            read(arr[i], "mips", path, n.mips);
            read(arr[i], "cores", path, n.cores);
            cfg.nodes.push_back(n);
        }
    }
    if (root.contains("cloud")) {
        const auto& s = section(root, "cloud", "");
        read(s, "mips", "cloud", cfg.cloud.mips);
        read(s, "cores", "cloud", cfg.cloud.cores);
    }
    if (root.contains("network")) {
        const auto& s = section(root, "network", "");
        auto& n = cfg.network;
        read(s, "wlan_bandwidth_bps", "network", n.wlan_bandwidth_bps);
        read(s, "wlan_jitter_stddev_s", "network", n.wlan_jitter_stddev_s);
        read(s, "sat_bandwidth_bps", "network", n.sat_bandwidth_bps);
        read(s, "sat_propagation_s", "network", n.sat_propagation_s);
        read(s, "sat_jitter_stddev_s", "network", n.sat_jitter_stddev_s);
        read(s, "min_transfer_s", "network", n.min_transfer_s);
    }
    if (root.contains("task_types")) {
        const auto& arr = root.at("task_types");
        if (!arr.is_array()) throw ConfigError("task_types: expected an array");
        cfg.task_types.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "task_types[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) throw ConfigError(path + ": expected an object");
            TaskType t;
            t.id = static_cast<TypeId>(i);
            t.name = "type" + std::to_string(i);
            read(arr[i], "id", path, t.id);
            read(arr[i], "name", path, t.name);
            if (arr[i].contains("urgency")) {
                std::string u;
                read(arr[i], "urgency", path, u);
                t.urgency = parse_urgency(u, path + ".urgency");
            }
            if (!arr[i].contains("length_mi")) throw ConfigError(path + ".length_mi: missing");
            read_dist(arr[i], "length_mi", path, t.length_mi);
            read(arr[i], "input_kb", path, t.input_kb);
            read(arr[i], "output_kb", path, t.output_kb);
            read(arr[i], "beta", path, t.beta);
            read(arr[i], "alpha", path, t.alpha);
            read(arr[i], "epsilon_s", path, t.epsilon_s);
            cfg.task_types.push_back(std::move(t));
        }
    }
    if (root.contains("workload")) {
        const auto& s = section(root, "workload", "");
        auto& w = cfg.workload;
        read(s, "num_applications", "workload", w.num_applications);
        if (s.contains("tasks_per_app")) {
            const auto& tp = section(s, "tasks_per_app", "workload");
            read(tp, "min", "workload.tasks_per_app", w.tasks_per_app_min);
            read(tp, "max", "workload.tasks_per_app", w.tasks_per_app_max);
        }
        read(s, "type_mix", "workload", w.type_mix);
        read(s, "horizon_s", "workload", w.horizon_s);
        read(s, "task_rate_per_s", "workload", w.task_rate_per_s);
        read(s, "min_length_fraction", "workload", w.min_length_fraction);
        if (s.contains("burst")) {
            if (s.at("burst").is_null()) {
                w.burst.reset();
            } else {
                const auto& b = section(s, "burst", "workload");
                Burst burst = w.burst.value_or(Burst{});
                read(b, "start_s", "workload.burst", burst.start_s);
                read(b, "duration_s", "workload.burst", burst.duration_s);
                read(b, "rate_multiplier", "workload.burst", burst.rate_multiplier);
                w.burst = burst;
            }
        }
    }
    if (root.contains("estimator")) {
        const auto& s = section(root, "estimator", "");
        auto& e = cfg.estimator;
        if (s.contains("window")) {
            std::int64_t window = 0;
            read(s, "window", "estimator", window);
            if (window < 1) throw ConfigError("estimator.window must be >= 1");
            e.window = static_cast<std::size_t>(window);
        }
        read(s, "refresh_period_s", "estimator", e.refresh_period_s);
        read(s, "etc_prior_queue_factor", "estimator", e.etc_prior_queue_factor);
        read(s, "etc_prior_rel_stddev", "estimator", e.etc_prior_rel_stddev);
        read(s, "ett_prior_rel_stddev", "estimator", e.ett_prior_rel_stddev);
    }
    return cfg;
}

SimulationConfig parse_and_validate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto cfg = parse_config(buf.str());
    validate(cfg);
    return cfg;
}

std::string to_json(const SimulationConfig& cfg) {
    json root;
    root["schema_version"] = cfg.schema_version;
    root["seed"] = cfg.seed;
    root["heuristic"] = std::string(to_string(cfg.heuristic));
    root["nodes"] = json::array();
    for (const auto& n : cfg.nodes) {
        root["nodes"].push_back({{"id", n.id}, {"mips", n.mips}, {"cores", n.cores}});
    }
    root["cloud"] = {{"mips", cfg.cloud.mips}, {"cores", cfg.cloud.cores}};
    const auto& n = cfg.network;
    root["network"] = {{"wlan_bandwidth_bps", n.wlan_bandwidth_bps},
                       {"wlan_jitter_stddev_s", n.wlan_jitter_stddev_s},
                       {"sat_bandwidth_bps", n.sat_bandwidth_bps},
                       {"sat_propagation_s", n.sat_propagation_s},
                       {"sat_jitter_stddev_s", n.sat_jitter_stddev_s},
                       {"min_transfer_s", n.min_transfer_s}};
    root["task_types"] = json::array();
    for (const auto& t : cfg.task_types) {
        root["task_types"].push_back({{"id", t.id},
                                      {"name", t.name},
                                      {"urgency", std::string(to_string(t.urgency))},
                                      {"length_mi", {{"mean", t.length_mi.mean}, {"stddev", t.length_mi.stddev}}},
                                      {"input_kb", t.input_kb},
                                      {"output_kb", t.output_kb},
                                      {"beta", t.beta},
                                      {"alpha", t.alpha},
                                      {"epsilon_s", t.epsilon_s}});
    }
    const auto& w = cfg.workload;
    json wl = {{"num_applications", w.num_applications},
               {"tasks_per_app", {{"min", w.tasks_per_app_min}, {"max", w.tasks_per_app_max}}},
               {"type_mix", w.type_mix},
               {"horizon_s", w.horizon_s},
               {"task_rate_per_s", w.task_rate_per_s},
               {"min_length_fraction", w.min_length_fraction}};
    if (w.burst) {
        wl["burst"] = {{"start_s", w.burst->start_s},
                       {"duration_s", w.burst->duration_s},
                       {"rate_multiplier", w.burst->rate_multiplier}};
    } else {
        wl["burst"] = nullptr;
    }
    root["workload"] = wl;
    const auto& e = cfg.estimator;
    root["estimator"] = {{"window", e.window},
                         {"refresh_period_s", e.refresh_period_s},
                         {"etc_prior_queue_factor", e.etc_prior_queue_factor},
                         {"etc_prior_rel_stddev", e.etc_prior_rel_stddev},
                         {"ett_prior_rel_stddev", e.ett_prior_rel_stddev}};
    return root.dump(2) + "\n";
}

std::filesystem::path default_config_dir() {
    if (const char* env = std::getenv("EDGEFED_CONFIG_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "configs";
}

}  // namespace edgefed
