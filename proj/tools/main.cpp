// roversim: suspension comparison simulator CLI.
//
// Verbs: run (single scenario), sweep (full grid), report (regenerate
// outputs from stored results), check (built-in invariant suite).

#include <rover/checks.hpp>
#include <rover/config.hpp>
#include <rover/errors.hpp>
#include <rover/format.hpp>
#include <rover/report.hpp>
#include <rover/scenario.hpp>
#include <rover/sweep.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>

namespace {

using namespace rover;

constexpr scalar_t kDegToRad = 3.14159265358979323846 / 180.0;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<scalar_t> gravity;
    std::optional<std::uint32_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> mode;
};

SimConfig load_with_overrides(const CommonOptions& options) {
    SimConfig config =
        options.config_path.empty() ? default_config() : load_config(options.config_path);
    if (!options.out_dir.empty()) config.output_dir = options.out_dir;
    if (options.gravity) config.rover.gravity = *options.gravity;
    if (options.seed) config.seed = *options.seed;
    if (options.jobs) config.sweep.jobs = *options.jobs;
    if (options.mode) {
        config.suspension = parse_suspension_mode(*options.mode);
        config.sweep.modes = {*options.mode};
    }
    config.validate();
    return config;
}

void print_metrics(const MetricsSummary& m) {
    std::printf("  F_max  = %.3f N\n", m.max_vertical_load);
    std::printf("  T_max  = %.3f N.m\n", m.max_pitch_torque);
    std::printf("  Acc    = [%.3f, %.3f] g (gap %.3f)\n", m.min_acceleration,
                m.max_acceleration, m.acceleration_gap);
    std::printf("  sigma  = %.4f g\n", m.acceleration_sigma_mean);
}

// Emits heatmaps, the maxima table, and acceleration plots that the
// stored results support.
void emit_reports(const SweepResult& result, const SimConfig& config,
                  const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);

    std::set<ScenarioKind> kinds;
    std::set<long> speeds;
    for (const SweepCell& cell : result.cells) {
        kinds.insert(cell.spec.kind);
        speeds.insert(std::lround(cell.spec.speed * 1e6));
    }
    for (ScenarioKind kind : kinds) {
        if (kind == ScenarioKind::FlatRun) continue;
        emit_heatmap(result, kind, out_dir);
        std::printf("wrote %s/heatmap_%s.svg\n", out_dir.c_str(), to_string(kind).c_str());
        if (kind == ScenarioKind::Step || kind == ScenarioKind::Slope) {
            std::printf("%s\n", grid_monotonicity_report(result, kind).c_str());
        }
    }
    if (speeds.empty()) return;
    const scalar_t top_speed = *speeds.rbegin() * 1e-6;

    std::vector<std::pair<ScenarioKind, scalar_t>> table_rows;
    if (kinds.count(ScenarioKind::Rock)) {
        table_rows.emplace_back(ScenarioKind::Rock, config.sweep.rock_radius);
    }
    if (kinds.count(ScenarioKind::Outcrop)) {
        table_rows.emplace_back(ScenarioKind::Outcrop, config.sweep.outcrop_max_height);
    }
    if (kinds.count(ScenarioKind::Slope)) {
        table_rows.emplace_back(ScenarioKind::Slope, 20.0 * kDegToRad);
    }
    if (!table_rows.empty()) {
        try {
            const std::string path = out_dir + "/max_table.csv";
            emit_max_table(result, table_rows, top_speed, path);
            std::printf("wrote %s\n", path.c_str());
        } catch (const IncompleteGrid&) {
            // not every sweep covers the comparison table rows
        }
    }

    for (const auto& [kind, parameter] : table_rows) {
        std::vector<SimulationTrace> traces;
        std::vector<std::string> labels;
        for (const SweepCell& cell : result.cells) {
            if (cell.spec.kind == kind && std::abs(cell.spec.parameter - parameter) < 1e-9 &&
                std::abs(cell.spec.speed - top_speed) < 1e-9 &&
                std::filesystem::exists(cell.trace_path)) {
                traces.push_back(read_trace_csv(cell.trace_path));
                labels.push_back(to_string(cell.spec.mode));
            }
        }
        if (!traces.empty()) {
            const std::string path = out_dir + "/accel_" + to_string(kind) + ".svg";
            emit_accel_plot(traces, labels, path);
            std::printf("wrote %s\n", path.c_str());
        }
    }
}

int cmd_run(const CommonOptions& options, const std::string& module, scalar_t value,
            scalar_t speed) {
    SimConfig config = load_with_overrides(options);
    ScenarioSpec spec;
    spec.kind = parse_scenario_kind(module);
    spec.parameter = spec.kind == ScenarioKind::Slope ? value * kDegToRad : value;
    spec.speed = speed;
    spec.mode = config.suspension;
    spec.gravity = config.rover.gravity;
    spec.timeout = config.timeout;
    spec.seed = config.seed;

    const ScenarioRun run = run_scenario(spec, config);
    std::filesystem::create_directories(config.output_dir);
    const std::string trace_path = config.output_dir + "/trace_" + to_string(spec.kind) +
                                   "_" + to_string(spec.mode) + ".csv";
    write_trace_csv(run.trace, trace_path, 1);

    std::printf("%s %s v=%.3g m/s: %s (%s) at t=%.2f s\n", to_string(spec.kind).c_str(),
                to_string(spec.mode).c_str(), speed, to_string(run.outcome.verdict).c_str(),
                run.outcome.reason.c_str(), run.outcome.termination_time);
    if (!run.trace.records.empty()) {
        print_metrics(summarize(run.trace, config.sigma_window));
    }
    std::printf("trace: %s\n", trace_path.c_str());
    return 0;
}

int cmd_sweep(const CommonOptions& options) {
    SimConfig config = load_with_overrides(options);
    const SweepResult result = run_sweep(config);
    std::filesystem::create_directories(config.output_dir);
    const std::string results_path = config.output_dir + "/results.csv";
    write_results_csv(result, results_path);
    std::printf("%zu cells -> %s\n", result.cells.size(), results_path.c_str());
    emit_reports(result, config, config.output_dir);
    const int failed = result.failed_cell_count();
    if (failed > 0) {
        std::fprintf(stderr, "%d cell(s) failed with numerical instability\n", failed);
        return 2;
    }
    return 0;
}

int cmd_report(const CommonOptions& options, std::string results_path) {
    SimConfig config = load_with_overrides(options);
    if (results_path.empty()) results_path = config.output_dir + "/results.csv";
    const SweepResult result = read_results_csv(results_path);
    const std::string out_dir =
        options.out_dir.empty() ? config.output_dir : options.out_dir;
    emit_reports(result, config, out_dir);
    return 0;
}

int cmd_check(const CommonOptions& options) {
    SimConfig config = load_with_overrides(options);
    bool all_pass = true;
    auto report = [&all_pass](const char* name, bool pass, const std::string& detail) {
        std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
        all_pass = all_pass && pass;
    };

    const QuarterCarCheck qc = check_quarter_car();
    report("quarter-car oracle", qc.pass,
           "max error " + format_fixed(100.0 * qc.max_error_fraction, 3) + "% of x0 (tol " +
               format_fixed(100.0 * qc.tolerance, 0) + "%)");

    const EnergyLedgerCheck energy = check_energy_ledger(config.rover);
    report("energy ledger", energy.pass,
           "drift " + format_fixed(100.0 * energy.drift_fraction, 3) + "% (tol " +
               format_fixed(100.0 * energy.tolerance, 0) + "%)");

    const StaticLoadCheck loads = check_static_loads(config.rover, config.suspension);
    report("static equilibrium", loads.pass,
           "total " + format_fixed(loads.total_normal_force, 3) + " N vs " +
               format_fixed(loads.expected_total, 3) + " N");

    const DeterminismCheck det = check_determinism(config);
    report("determinism", det.pass, det.pass ? "bit-identical repeat run" : "traces differ");

    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Passive rover suspension comparison simulator"};
    app.require_subcommand(1);

    CommonOptions options;
    std::string module = "rock";
    scalar_t value = 0.1;
    scalar_t speed = 0.5;
    std::string results_path;

    auto add_common = [&options](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "config file (TOML)");
        cmd->add_option("--out", options.out_dir, "output directory");
        cmd->add_option("--gravity", options.gravity, "gravity override [m/s^2]");
        cmd->add_option("--seed", options.seed, "outcrop profile seed");
        cmd->add_option("--mode", options.mode, "suspension mode: DR, IE, or MHS");
    };

    CLI::App* run = app.add_subcommand("run", "run a single scenario");
    add_common(run);
    run->add_option("--module", module, "step, rock, outcrop, slope, or flat");
    run->add_option("--value", value, "height/radius [m] or slope angle [deg]");
    run->add_option("--speed", speed, "commanded speed [m/s]");

    CLI::App* sweep = app.add_subcommand("sweep", "run the full scenario grid");
    add_common(sweep);
    sweep->add_option("--jobs", options.jobs, "parallel cells");

    CLI::App* report = app.add_subcommand("report", "regenerate reports from stored results");
    add_common(report);
    report->add_option("--results", results_path, "results CSV path");

    CLI::App* check = app.add_subcommand("check", "run the invariant suite");
    add_common(check);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(options, module, value, speed);
        if (sweep->parsed()) return cmd_sweep(options);
        if (report->parsed()) return cmd_report(options, results_path);
        if (check->parsed()) return cmd_check(options);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config parse error: %s\n", e.what());
        return 1;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const InvalidSpec& e) {
        std::fprintf(stderr, "invalid scenario: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
