// Grid sweeps over (module x parameter x speed x mode) cells.
#pragma once

#include <rover/config.hpp>
#include <rover/metrics.hpp>
#include <rover/scenario.hpp>

#include <string>
#include <vector>

namespace rover {

inline constexpr const char* kArtifactVersion = "roversim 0.1.0";

struct SweepCell {
    ScenarioSpec spec;
    ScenarioOutcome outcome;
    MetricsSummary metrics;
    std::string trace_path;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::string config_hash;
    std::string version = kArtifactVersion;
    std::string timestamp;

    /// Cells that aborted on numerical instability.
    int failed_cell_count() const;
};

/// Grid cells in deterministic order (modules, then parameter, speed,
/// mode as configured).
std::vector<ScenarioSpec> build_grid(const SimConfig& config);

/// Runs every cell, up to config.sweep.jobs in parallel, writing one
/// decimated trace CSV per cell under <output_dir>/traces. Per-cell
/// failures are recorded and the sweep continues. Results keep grid
/// order regardless of scheduling.
SweepResult run_sweep(const SimConfig& config);

/// Results CSV. The header carries the config hash and a timestamp
/// comment line; everything below it is deterministic for a given
/// config.
void write_results_csv(const SweepResult& result, const std::string& path);
SweepResult read_results_csv(const std::string& path);

} // namespace rover
