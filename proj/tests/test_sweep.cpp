#include <rover/checks.hpp>
#include <rover/report.hpp>
#include <rover/sweep.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rover;

namespace {

// Small but real grid that runs in a few seconds.
SimConfig small_sweep_config(const std::string& out_dir) {
    SimConfig config;
    config.output_dir = out_dir;
    config.sweep.modules = {"step"};
    config.sweep.step_heights = {0.03};
    config.sweep.speeds = {0.5, 1.0};
    config.sweep.modes = {"DR", "IE", "MHS"};
    config.sweep.trace_stride = 50;
    return config;
}

std::string results_without_timestamp(const std::string& path, const std::string& dir) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream kept;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# generated=", 0) == 0) continue;
        // Normalize the output directory embedded in trace paths.
        std::string::size_type pos;
        while ((pos = line.find(dir)) != std::string::npos) {
            line.replace(pos, dir.size(), "@");
        }
        kept << line << '\n';
    }
    return kept.str();
}

} // namespace

TEST_CASE("grid enumeration counts modules x parameters x speeds x modes") {
    SimConfig config;
    config.sweep.modules = {"step"};
    CHECK(build_grid(config).size() == 12 * 6 * 3);

    config.sweep.modules = {"step", "rock", "outcrop", "slope"};
    CHECK(build_grid(config).size() == (12 + 1 + 1 + 6) * 6 * 3);
}

TEST_CASE("sweep writes one row per cell and is byte-deterministic") {
    const std::string dir_a = (std::filesystem::temp_directory_path() /
                               "roversim_sweep_a").string();
    const std::string dir_b = (std::filesystem::temp_directory_path() /
                               "roversim_sweep_b").string();
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    SimConfig config_a = small_sweep_config(dir_a);
    const SweepResult result_a = run_sweep(config_a);
    CHECK(result_a.cells.size() == 6);
    write_results_csv(result_a, dir_a + "/results.csv");

    SimConfig config_b = small_sweep_config(dir_b);
    config_b.sweep.jobs = 3;  // parallel scheduling must not change results
    const SweepResult result_b = run_sweep(config_b);
    write_results_csv(result_b, dir_b + "/results.csv");

    CHECK(results_without_timestamp(dir_a + "/results.csv", dir_a) ==
          results_without_timestamp(dir_b + "/results.csv", dir_b));

    // Round trip preserves the cells.
    const SweepResult back = read_results_csv(dir_a + "/results.csv");
    REQUIRE(back.cells.size() == result_a.cells.size());
    for (std::size_t i = 0; i < back.cells.size(); ++i) {
        CHECK(back.cells[i].spec.kind == result_a.cells[i].spec.kind);
        CHECK(back.cells[i].spec.mode == result_a.cells[i].spec.mode);
        CHECK(back.cells[i].outcome.verdict == result_a.cells[i].outcome.verdict);
        CHECK(back.cells[i].metrics.max_vertical_load ==
              doctest::Approx(result_a.cells[i].metrics.max_vertical_load));
    }
    CHECK(back.config_hash == result_a.config_hash);

    // Trace files exist where the results point.
    for (const SweepCell& cell : result_a.cells) {
        CHECK(std::filesystem::exists(cell.trace_path));
    }

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("an unstable cell is recorded and the sweep continues") {
    const std::string dir = (std::filesystem::temp_directory_path() /
                             "roversim_sweep_unstable").string();
    std::filesystem::remove_all(dir);
    SimConfig config = small_sweep_config(dir);
    // A near-massless wheel makes the explicit strut damping force
    // violently divergent at this timestep (dt*c/m >> 2) for the modes
    // with live struts; DR is untouched and must still complete.
    config.rover.unsprung_mass = 1e-3;
    config.sweep.speeds = {1.0};
    const SweepResult result = run_sweep(config);
    CHECK(result.cells.size() == 3);
    CHECK(result.failed_cell_count() == 2);
    for (const SweepCell& cell : result.cells) {
        if (cell.spec.mode == SuspensionMode::DR) continue;
        CHECK(cell.outcome.verdict == ScenarioOutcome::Verdict::Failure);
        CHECK(cell.outcome.reason == "numerical instability");
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("repeat scenario runs are bit-identical") {
    const DeterminismCheck check = check_determinism(SimConfig{});
    CHECK(check.pass);
}

TEST_CASE("reports regenerate identically from stored results") {
    const std::string dir = (std::filesystem::temp_directory_path() /
                             "roversim_sweep_regen").string();
    std::filesystem::remove_all(dir);
    SimConfig config = small_sweep_config(dir);
    config.sweep.step_heights = {0.03, 0.08};
    const SweepResult live = run_sweep(config);
    write_results_csv(live, dir + "/results.csv");
    emit_heatmap(live, ScenarioKind::Step, dir);

    auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        REQUIRE(in);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    };
    const std::string first_svg = slurp(dir + "/heatmap_step.svg");
    const std::string first_csv = slurp(dir + "/heatmap_step_MHS.csv");

    const SweepResult stored = read_results_csv(dir + "/results.csv");
    emit_heatmap(stored, ScenarioKind::Step, dir);
    CHECK(slurp(dir + "/heatmap_step.svg") == first_svg);
    CHECK(slurp(dir + "/heatmap_step_MHS.csv") == first_csv);

    // All output paths stay under the configured directory.
    for (const SweepCell& cell : live.cells) {
        CHECK(cell.trace_path.rfind(dir, 0) == 0);
    }
    std::filesystem::remove_all(dir);
}
