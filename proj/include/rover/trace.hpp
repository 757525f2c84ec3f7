// Fixed-rate simulation traces and their CSV persistence.
#pragma once

#include <rover/state.hpp>
#include <rover/types.hpp>

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace rover {

struct TraceRecord {
    RoverState state;
    std::array<scalar_t, kWheelCount> normal_force{};
    std::array<scalar_t, kWheelCount> strut_force{};
    std::array<scalar_t, kWheelCount> attachment_vertical_force{};
    std::array<scalar_t, kWheelCount> attachment_pitch_torque{};
    std::array<bool, kWheelCount> in_contact{};
    std::array<scalar_t, kWheelCount> wheel_x{};  ///< world x of wheel centers
    scalar_t pivot_torque_left = 0.0;
    scalar_t pivot_torque_right = 0.0;
    scalar_t vertical_acceleration_g = 0.0;  ///< chassis, in units of 9.81 m/s^2

    /// Signed pivot torque of larger magnitude, the reported T signal.
    scalar_t pivot_torque() const {
        return std::abs(pivot_torque_left) >= std::abs(pivot_torque_right)
                   ? pivot_torque_left
                   : pivot_torque_right;
    }
};

struct SimulationTrace {
    scalar_t dt = 1e-3;
    std::vector<TraceRecord> records;
    bool aborted_non_finite = false;

    scalar_t duration() const { return records.empty() ? 0.0 : records.back().state.time; }
};

/// Plain-CSV persistence. `stride` keeps every n-th record; sweeps use a
/// coarser stride to bound disk usage, `run` writes every step.
void write_trace_csv(const SimulationTrace& trace, const std::string& path, int stride = 1);

/// Reads a persisted trace. Velocity columns are restored; rate fields
/// that are not persisted (rocker_rate, strut_rate, wheel_spin) read
/// back as zero.
SimulationTrace read_trace_csv(const std::string& path);

} // namespace rover
