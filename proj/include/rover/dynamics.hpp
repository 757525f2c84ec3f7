// Reduced-coordinate equations of motion: chassis 6-DOF rigid body,
// differential rocker angle, and four strut travels, advanced by
// semi-implicit Euler at a fixed timestep.
#pragma once

#include <rover/contact.hpp>
#include <rover/parameters.hpp>
#include <rover/state.hpp>
#include <rover/terrain.hpp>

#include <array>
#include <optional>

namespace rover {

/// World-frame kinematics of one wheel station.
struct WheelKinematics {
    vec3_t attach_point = vec3_t::Zero();     ///< rocker arm end (strut top)
    vec3_t attach_velocity = vec3_t::Zero();
    vec3_t wheel_center = vec3_t::Zero();
    vec3_t wheel_velocity = vec3_t::Zero();
    vec3_t phi_jacobian = vec3_t::Zero();     ///< d(wheel_center)/d(rocker_angle)
};

/// Exact kinematic chain: chassis pose, rocker rotation about the pivot,
/// then the strut displacement along the chassis-up axis. Velocities are
/// the full time derivatives of the chain.
std::array<WheelKinematics, kWheelCount> attachment_points(const RoverState& state,
                                                           const RoverParameters& params);

/// Axial strut force, positive pushing the wheel away from the chassis.
/// Linear spring-damper inside the travel range plus a one-sided stiff
/// end-stop penalty beyond [0, strut_max_travel]. The stop dissipates
/// while being approached (bump stops are lossy); its damping scales
/// with the configured damper and is capped near critical.
scalar_t suspension_force(scalar_t travel, scalar_t travel_rate,
                          const RoverParameters& params);

/// Rocker end-stop torque, zero inside +/- rocker_limit.
scalar_t rocker_endstop_torque(scalar_t angle, scalar_t rate,
                               const RoverParameters& params);

/// Per-step force and contact log used to build traces.
struct StepDiagnostics {
    std::array<std::optional<ContactPoint>, kWheelCount> contacts;
    /// Axial force along the strut; in DR the rigid transmission value.
    std::array<scalar_t, kWheelCount> strut_force{};
    /// Vertical component of the total force each wheel station passes
    /// into the rocker arm (strut axial + rail-transmitted parts).
    std::array<scalar_t, kWheelCount> attachment_vertical_force{};
    /// Pitch moment carried through each rocker-arm-end joint (lateral
    /// axis, levers measured from the arm end).
    std::array<scalar_t, kWheelCount> attachment_pitch_torque{};
    scalar_t pivot_torque_left = 0.0;   ///< N.m about the left pivot lateral axis
    scalar_t pivot_torque_right = 0.0;
    vec3_t chassis_acceleration = vec3_t::Zero();  ///< world frame [m/s^2]
};

/// Advances the state by one fixed timestep. Velocities integrate first
/// from the assembled forces, then positions. Locked DOFs (struts in DR,
/// rocker in IE) are skipped bit-exactly. Deterministic.
///
/// Throws NonFiniteState if any coordinate leaves the finite range.
RoverState step(const RoverState& state, const RoverParameters& params, SuspensionMode mode,
                const TerrainScene& scene, const DriveCommand& command,
                StepDiagnostics* diagnostics = nullptr);

/// Kinetic plus gravitational, strut spring, end-stop, and contact
/// penalty energy. With zero damping and zero friction this is conserved
/// up to integrator error.
scalar_t total_energy(const RoverState& state, const RoverParameters& params,
                      const TerrainScene& scene);

} // namespace rover
