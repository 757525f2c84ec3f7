// Built-in invariant suite: quarter-car oracle, energy ledger, static
// load split, and trace determinism. Used by the `check` CLI verb and
// the acceptance tests.
#pragma once

#include <rover/config.hpp>
#include <rover/parameters.hpp>

#include <array>
#include <string>
#include <vector>

namespace rover {

/// Closed-form underdamped oscillator displacement for initial offset
/// x0 released from rest. Throws DegenerateInput when the parameters
/// are not underdamped.
scalar_t damped_oscillator_position(scalar_t mass, scalar_t stiffness, scalar_t damping,
                                    scalar_t initial_offset, scalar_t time);

/// Integrates an isolated strut (no gravity, no contact) with the same
/// semi-implicit scheme and strut force law as the full model and
/// compares it against the closed form.
struct QuarterCarCheck {
    scalar_t max_error_fraction = 0.0;  ///< peak |error| / |x0|
    scalar_t tolerance = 0.02;
    bool pass = false;
};
QuarterCarCheck check_quarter_car(scalar_t mass = 19.6, scalar_t stiffness = 2000.0,
                                  scalar_t damping = 350.0, scalar_t initial_offset = 0.02,
                                  scalar_t dt = 1e-3, scalar_t duration = 5.0,
                                  scalar_t tolerance = 0.02);

/// Drop-and-bounce on rigid flat ground with zero damping and zero
/// friction; total energy must hold within the tolerance over the run.
struct EnergyLedgerCheck {
    scalar_t drift_fraction = 0.0;          ///< |E_end - E_0| / E_0
    scalar_t max_excursion_fraction = 0.0;  ///< peak |E - E_0| / E_0
    scalar_t tolerance = 0.01;
    bool pass = false;
};
EnergyLedgerCheck check_energy_ledger(RoverParameters params = RoverParameters{},
                                      scalar_t drop_height = 0.05, scalar_t duration = 2.0,
                                      scalar_t tolerance = 0.01);

/// Settles the rover on flat ground and compares the measured normal
/// forces against total_mass * g and the configured wheel-load shares.
struct StaticLoadCheck {
    scalar_t total_normal_force = 0.0;
    scalar_t expected_total = 0.0;
    std::array<scalar_t, kWheelCount> wheel_load{};
    std::array<scalar_t, kWheelCount> expected_load{};
    scalar_t total_tolerance = 0.01;   ///< relative
    scalar_t wheel_tolerance = 0.05;   ///< relative
    bool pass = false;
};
StaticLoadCheck check_static_loads(RoverParameters params = RoverParameters{},
                                   SuspensionMode mode = SuspensionMode::MHS);

/// Runs the same short scenario twice and requires bit-identical traces.
struct DeterminismCheck {
    bool pass = false;
};
DeterminismCheck check_determinism(const SimConfig& config = SimConfig{});

} // namespace rover
