// Evaluation quantities computed from traces: load and torque maxima,
// chassis vertical acceleration statistics, and reduction rates.
#pragma once

#include <rover/trace.hpp>
#include <rover/types.hpp>

#include <span>

namespace rover {

struct MetricsSummary {
    scalar_t max_vertical_load = 0.0;        ///< F: N, peak |vertical attachment force|
    /// T: N.m, peak |pitch moment| carried through the rocker-arm-end
    /// joints (the per-side pivot moments stay available in the trace).
    scalar_t max_pitch_torque = 0.0;
    scalar_t max_acceleration = 0.0;         ///< g
    scalar_t min_acceleration = 0.0;         ///< g, negative values preserved
    scalar_t acceleration_gap = 0.0;         ///< g, max - min
    scalar_t acceleration_sigma_mean = 0.0;  ///< g, mean sliding-window std deviation
};

/// Summarizes a trace. Accelerations are already stored in g-units of
/// 9.81 m/s^2. The sigma statistic averages the population standard
/// deviation over sliding windows of `sigma_window` seconds.
/// Throws EmptyTrace.
MetricsSummary summarize(const SimulationTrace& trace, scalar_t sigma_window = 1.0);

/// Reduction from the worst (maximum) to the best (minimum) value,
/// as an integer percent: (min - max) / max * 100, rounded to nearest.
/// Throws DegenerateInput when fewer than two values or max == 0.
int reduction_rate(std::span<const scalar_t> values);

/// Mean of per-scenario reduction rates from configuration A to B,
/// each rounded as in reduction_rate. Throws IncompleteGrid on size
/// mismatch or empty input, DegenerateInput on a zero baseline.
scalar_t average_reduction(std::span<const scalar_t> from_values,
                           std::span<const scalar_t> to_values);

} // namespace rover
