// Static analysis helpers: equilibrium solve, differential pitch
// identity, and rigid tip-over bounds.
#pragma once

#include <rover/parameters.hpp>
#include <rover/state.hpp>

namespace rover {

/// Analytic static force balance on flat ground. Front and rear wheel
/// loads follow the configured static shares (the differential transmits
/// the common pitch moment to the chassis, whose sprung CoM offset is
/// constructed to produce exactly those shares in every mode).
struct StaticEquilibrium {
    scalar_t front_wheel_load = 0.0;     ///< N, per wheel contact normal
    scalar_t rear_wheel_load = 0.0;
    scalar_t front_strut_force = 0.0;    ///< N, wheel load minus unsprung weight
    scalar_t rear_strut_force = 0.0;
    scalar_t front_travel = 0.0;         ///< m, equilibrium strut travel s*
    scalar_t rear_travel = 0.0;
    scalar_t front_penetration = 0.0;    ///< m, contact penetration
    scalar_t rear_penetration = 0.0;
    scalar_t chassis_height = 0.0;       ///< m, CoM above ground
    scalar_t chassis_pitch = 0.0;        ///< rad
    scalar_t rocker_angle = 0.0;         ///< always 0 on flat ground
};

/// Solves the balance without integration. Throws NoEquilibrium when the
/// static deflection leaves the strut travel range. For DR the returned
/// travels are the values the struts are locked at.
StaticEquilibrium static_equilibrium(const RoverParameters& params, SuspensionMode mode);

/// Full state at rest on flat ground, CoM above the origin.
RoverState equilibrium_state(const RoverParameters& params, SuspensionMode mode);

/// Differential identity: chassis pitch equals the average of the two
/// absolute rocker rotations.
inline scalar_t differential_pitch(scalar_t left_absolute, scalar_t right_absolute) {
    return 0.5 * (left_absolute + right_absolute);
}

/// Rigid-body static tip-over bounds from the support polygon and CoM
/// height; gravity-independent.
struct TipoverAngles {
    scalar_t longitudinal = 0.0;  ///< rad
    scalar_t lateral = 0.0;       ///< rad
};

TipoverAngles static_tipover_angles(const RoverParameters& params);

} // namespace rover
