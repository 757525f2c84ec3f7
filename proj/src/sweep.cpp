#include <rover/sweep.hpp>

#include <rover/errors.hpp>
#include <rover/format.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace rover {
namespace {

constexpr scalar_t kDegToRad = 3.14159265358979323846 / 180.0;

std::string cell_trace_name(const ScenarioSpec& spec) {
    std::string name = to_string(spec.kind);
    if (spec.kind != ScenarioKind::FlatRun) {
        name += "_" + format_number(spec.kind == ScenarioKind::Slope
                                        ? spec.parameter / kDegToRad
                                        : spec.parameter);
    }
    name += "_v" + format_number(spec.speed) + "_" + to_string(spec.mode) + ".csv";
    return name;
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

} // namespace

int SweepResult::failed_cell_count() const {
    int count = 0;
    for (const SweepCell& cell : cells) {
        if (cell.outcome.reason == "numerical instability") ++count;
    }
    return count;
}

std::vector<ScenarioSpec> build_grid(const SimConfig& config) {
    std::vector<ScenarioSpec> grid;
    std::vector<SuspensionMode> modes;
    for (const std::string& name : config.sweep.modes) {
        modes.push_back(parse_suspension_mode(name));
    }
    for (const std::string& module : config.sweep.modules) {
        const ScenarioKind kind = parse_scenario_kind(module);
        std::vector<scalar_t> parameters;
        switch (kind) {
        case ScenarioKind::Step: parameters = config.sweep.step_heights; break;
        case ScenarioKind::Rock: parameters = {config.sweep.rock_radius}; break;
        case ScenarioKind::Outcrop: parameters = {config.sweep.outcrop_max_height}; break;
        case ScenarioKind::Slope:
            for (scalar_t deg : config.sweep.slope_angles_deg) {
                parameters.push_back(deg * kDegToRad);
            }
            break;
        case ScenarioKind::FlatRun: parameters = {0.0}; break;
        }
        for (scalar_t parameter : parameters) {
            for (scalar_t speed : config.sweep.speeds) {
                for (SuspensionMode mode : modes) {
                    ScenarioSpec spec;
                    spec.kind = kind;
                    spec.parameter = parameter;
                    spec.speed = speed;
                    spec.mode = mode;
                    spec.gravity = config.rover.gravity;
                    spec.timeout = config.timeout;
                    spec.seed = config.seed;
                    grid.push_back(spec);
                }
            }
        }
    }
    return grid;
}

SweepResult run_sweep(const SimConfig& config) {
    const std::vector<ScenarioSpec> grid = build_grid(config);
    const std::filesystem::path trace_dir =
        std::filesystem::path(config.output_dir) / "traces";
    std::filesystem::create_directories(trace_dir);

    SweepResult result;
    result.cells.resize(grid.size());
    result.config_hash = config.hash();
    result.timestamp = iso_timestamp();

    std::atomic<std::size_t> next_index{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t index = next_index.fetch_add(1);
            if (index >= grid.size()) return;
            SweepCell& cell = result.cells[index];
            cell.spec = grid[index];
            cell.trace_path = (trace_dir / cell_trace_name(cell.spec)).string();
            try {
                ScenarioRun run = run_scenario(cell.spec, config);
                cell.outcome = run.outcome;
                if (!run.trace.records.empty()) {
                    cell.metrics = summarize(run.trace, config.sigma_window);
                }
                write_trace_csv(run.trace, cell.trace_path, config.sweep.trace_stride);
            } catch (const std::exception& e) {
                cell.outcome = {ScenarioOutcome::Verdict::Failure,
                                std::string("error: ") + e.what(), 0.0};
            }
        }
    };

    const int jobs = std::max(1, config.sweep.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return result;
}

void write_results_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open results file for writing: " + path);
    out << "# " << result.version << " results\n";
    out << "# config_hash=" << result.config_hash << '\n';
    out << "# generated=" << result.timestamp << '\n';
    out << "kind,parameter,speed,mode,verdict,f_max,t_max,acc_max,acc_min,acc_gap,"
           "acc_sigma_mean,reason,termination_time,trace_file\n";
    for (const SweepCell& cell : result.cells) {
        // Reasons can come from exception text; keep the row parseable.
        std::string reason = cell.outcome.reason;
        std::replace(reason.begin(), reason.end(), ',', ';');
        out << to_string(cell.spec.kind) << ',' << format_number(cell.spec.parameter) << ','
            << format_number(cell.spec.speed) << ',' << to_string(cell.spec.mode) << ','
            << to_string(cell.outcome.verdict) << ','
            << format_number(cell.metrics.max_vertical_load) << ','
            << format_number(cell.metrics.max_pitch_torque) << ','
            << format_number(cell.metrics.max_acceleration) << ','
            << format_number(cell.metrics.min_acceleration) << ','
            << format_number(cell.metrics.acceleration_gap) << ','
            << format_number(cell.metrics.acceleration_sigma_mean) << ','
            << reason << ',' << format_number(cell.outcome.termination_time) << ','
            << cell.trace_path << '\n';
    }
}

SweepResult read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open results file: " + path);
    SweepResult result;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto hash_pos = line.find("config_hash=");
            if (hash_pos != std::string::npos) {
                result.config_hash = line.substr(hash_pos + 12);
            }
            const auto stamp_pos = line.find("generated=");
            if (stamp_pos != std::string::npos) {
                result.timestamp = line.substr(stamp_pos + 10);
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() < 14) throw std::runtime_error("malformed results row in " + path);
        SweepCell cell;
        cell.spec.kind = parse_scenario_kind(fields[0]);
        cell.spec.parameter = std::stod(fields[1]);
        cell.spec.speed = std::stod(fields[2]);
        cell.spec.mode = parse_suspension_mode(fields[3]);
        cell.outcome.verdict = parse_verdict(fields[4]);
        cell.metrics.max_vertical_load = std::stod(fields[5]);
        cell.metrics.max_pitch_torque = std::stod(fields[6]);
        cell.metrics.max_acceleration = std::stod(fields[7]);
        cell.metrics.min_acceleration = std::stod(fields[8]);
        cell.metrics.acceleration_gap = std::stod(fields[9]);
        cell.metrics.acceleration_sigma_mean = std::stod(fields[10]);
        cell.outcome.reason = fields[11];
        cell.outcome.termination_time = std::stod(fields[12]);
        cell.trace_path = fields[13];
        result.cells.push_back(cell);
    }
    return result;
}

} // namespace rover
