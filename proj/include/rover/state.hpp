// Generalized coordinates of the reduced rover model.
#pragma once

#include <rover/types.hpp>

#include <array>

namespace rover {

/// Chassis 6-DOF pose plus the differential rocker angle, four strut
/// travels, and the kinematic wheel spin angles.
///
/// Conventions: world z is up, x is forward, y is left. The rocker
/// angle applies +phi to the left rocker and -phi to the right one,
/// both about the chassis lateral axis, so the chassis pitch is the
/// average of the two absolute rocker rotations by construction.
struct RoverState {
    vec3_t position = vec3_t::Zero();             ///< chassis CoM, world frame [m]
    quat_t orientation = quat_t::Identity();      ///< world <- chassis
    vec3_t linear_velocity = vec3_t::Zero();      ///< world frame [m/s]
    vec3_t angular_velocity = vec3_t::Zero();     ///< world frame [rad/s]
    scalar_t rocker_angle = 0.0;                  ///< phi [rad]
    scalar_t rocker_rate = 0.0;                   ///< [rad/s]
    std::array<scalar_t, kWheelCount> strut_travel{};  ///< s_i [m], arm end to wheel
    std::array<scalar_t, kWheelCount> strut_rate{};    ///< [m/s]
    std::array<scalar_t, kWheelCount> wheel_spin{};    ///< kinematic spin angle [rad]
    scalar_t time = 0.0;                          ///< [s]

    bool finite() const;
};

} // namespace rover
