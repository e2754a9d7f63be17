// edgefed: run, sweep and inspect federated edge allocation simulations.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgefed/commands.hpp"
#include "edgefed/errors.hpp"

namespace {

using edgefed::Heuristic;

std::vector<Heuristic> parse_heuristics(const std::vector<std::string>& names) {
    std::vector<Heuristic> out;
    for (const auto& n : names) out.push_back(edgefed::parse_heuristic(n));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Federated edge task allocation simulator (HPS / MECT / SCC)"};
    app.require_subcommand(1);

    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;

    // run
    auto* run = app.add_subcommand("run", "Simulate one configuration and write its report CSV");
    std::optional<std::string> run_heuristic;
    std::optional<int> run_apps;
    std::optional<std::string> trace;
    std::optional<std::string> dump_workload;
    std::optional<std::string> json_out;
    run->add_option("--config", config, "Config file (default: $EDGEFED_CONFIG_DIR/paper_default.json)");
    run->add_option("--seed", seed, "Override the run seed");
    run->add_option("--heuristic", run_heuristic, "Override the heuristic: hps, mect or scc");
    run->add_option("--apps", run_apps, "Override the number of applications");
    run->add_option("--out", out, "Report CSV path (default: stdout)");
    run->add_option("--trace", trace, "Write the event trace (JSON lines) here");
    run->add_option("--dump-workload", dump_workload, "Also write the generated task stream here");
    run->add_option("--json", json_out, "Write per-type/per-node detail and final matrices here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run heuristics x load points x replications and aggregate");
    std::vector<int> sweep_apps{50, 100, 150, 200, 250};
    std::vector<std::string> sweep_heuristics{"hps", "mect", "scc"};
    int reps = 10;
    int parallel = 1;
    std::optional<std::string> runs_out;
    sweep->add_option("--config", config, "Config file (default: $EDGEFED_CONFIG_DIR/paper_default.json)");
    sweep->add_option("--seed", seed, "Master seed (default: the config's seed)");
    sweep->add_option("--apps", sweep_apps, "Load points (number of applications)")->delimiter(',');
    sweep->add_option("--heuristic", sweep_heuristics, "Heuristics to compare")->delimiter(',');
    sweep->add_option("--reps", reps, "Replications per cell")->check(CLI::PositiveNumber);
    sweep->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out, "Sweep CSV path (default: stdout)");
    sweep->add_option("--runs-out", runs_out, "Also write one report row per run here");

    // validate
    auto* validate = app.add_subcommand("validate", "Check a config file and report the first problem");
    validate->add_option("--config", config, "Config file (default: $EDGEFED_CONFIG_DIR/paper_default.json)");

    // dump-workload
    auto* dump = app.add_subcommand("dump-workload", "Write the generated task stream as JSON lines");
    std::optional<int> dump_apps;
    dump->add_option("--config", config, "Config file (default: $EDGEFED_CONFIG_DIR/paper_default.json)");
    dump->add_option("--seed", seed, "Override the run seed");
    dump->add_option("--apps", dump_apps, "Override the number of applications");
    dump->add_option("--out", out, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    auto path_or_none = [](const std::optional<std::string>& s) -> std::optional<std::filesystem::path> {
        if (s) return std::filesystem::path(*s);
        return std::nullopt;
    };
    const auto config_path = edgefed::resolve_config_path(path_or_none(config));

    try {
        if (*run) {
            edgefed::RunOptions opts;
            opts.config = config_path;
            opts.overrides.seed = seed;
            if (run_heuristic) opts.overrides.heuristic = edgefed::parse_heuristic(*run_heuristic);
            opts.overrides.apps = run_apps;
            opts.out = path_or_none(out);
            opts.trace = path_or_none(trace);
            opts.dump_workload = path_or_none(dump_workload);
            opts.json = path_or_none(json_out);
            edgefed::cmd_run(opts);
        } else if (*sweep) {
            edgefed::SweepOptions opts;
            opts.config = config_path;
            opts.seed = seed;
            opts.apps = sweep_apps;
            opts.heuristics = parse_heuristics(sweep_heuristics);
            opts.replications = reps;
            opts.parallel = parallel;
            opts.out = path_or_none(out);
            opts.runs_out = path_or_none(runs_out);
            edgefed::cmd_sweep(opts);
        } else if (*validate) {
            const auto cfg = edgefed::cmd_validate(config_path);
            std::cout << config_path.string() << ": ok (" << cfg.nodes.size() << " edge nodes, "
                      << cfg.task_types.size() << " task types)\n";
        } else if (*dump) {
            edgefed::Overrides o;
            o.seed = seed;
            o.apps = dump_apps;
            edgefed::cmd_dump_workload(config_path, o, path_or_none(out));
        }
    } catch (const edgefed::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
