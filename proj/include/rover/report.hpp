// Report generation: outcome heatmaps, maxima tables with reduction
// rates, and acceleration line charts. All outputs are deterministic
// text (SVG/CSV) suitable for golden-file comparison.
#pragma once

#include <rover/sweep.hpp>
#include <rover/trace.hpp>

#include <string>
#include <utility>
#include <vector>

namespace rover {

/// One SVG (a panel per suspension mode, rows = obstacle height or slope
/// angle, columns = speed) plus one verdict-grid CSV per mode, written
/// under out_dir. Throws IncompleteGrid when any cell is missing.
void emit_heatmap(const SweepResult& result, ScenarioKind kind, const std::string& out_dir);

/// Maxima comparison table: one row per requested scenario,
/// F/T/Acc columns per mode plus reduction-rate and best-mode columns.
/// Throws IncompleteGrid when a summary is missing.
void emit_max_table(const SweepResult& result,
                    const std::vector<std::pair<ScenarioKind, scalar_t>>& scenarios,
                    scalar_t speed, const std::string& csv_path);

/// Chassis vertical acceleration vs time, one labeled curve per trace,
/// y-axis in g. Throws EmptyTrace when no trace is given.
void emit_accel_plot(const std::vector<SimulationTrace>& traces,
                     const std::vector<std::string>& labels, const std::string& svg_path);

/// Soft sanity line: fraction of Success cells whose lower obstacle
/// heights at the same speed and mode are also at least as successful.
/// Reported, never asserted.
std::string grid_monotonicity_report(const SweepResult& result, ScenarioKind kind);

} // namespace rover
