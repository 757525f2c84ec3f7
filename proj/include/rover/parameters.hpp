// Rover model parameters and suspension configuration flags.
#pragma once

#include <rover/types.hpp>

#include <string>

namespace rover {

/// Full dynamic-model parameter set. Defaults describe the reference
/// 4-wheel rover under lunar gravity; every value can be overridden
/// through the config file.
struct RoverParameters {
    scalar_t wheel_radius = 0.1;            ///< m
    scalar_t wheelbase = 0.6;               ///< m, front-to-rear wheel distance
    scalar_t arm_length = 0.3;              ///< m, rocker pivot to wheel
    scalar_t wheel_track = 0.47;            ///< m, left-to-right wheel distance
    scalar_t com_height = 0.25;             ///< m, CoM above ground at nominal stance
    scalar_t spring_rate = 2000.0;          ///< N/m per strut
    scalar_t damping = 350.0;               ///< N.s/m per strut
    scalar_t spring_free_length = 0.035;    ///< m
    scalar_t total_mass = 19.6;             ///< kg, chassis plus wheels
    scalar_t front_static_load = 4.8;       ///< kg carried per front wheel
    scalar_t rear_static_load = 5.0;        ///< kg carried per rear wheel
    scalar_t unsprung_mass = 1.5;           ///< kg per wheel (wheel + knuckle)
    scalar_t rocker_limit = 0.7853981633974483;  ///< rad, +/- rocker end stop (45 deg)
    scalar_t gravity = 1.625;               ///< m/s^2
    scalar_t contact_stiffness = 100e3;     ///< N/m penalty stiffness per wheel
    scalar_t contact_damping = 1.5e3;       ///< N.s/m penalty damping per wheel
    scalar_t friction_regularization = 0.01; ///< m/s slip speed scale in tanh law
    scalar_t timestep = 1.25e-4;            ///< s

    /// Upper strut travel limit, symmetric about the free length.
    scalar_t strut_max_travel() const { return 2.0 * spring_free_length; }

    /// Chassis body mass (total minus the four unsprung masses).
    scalar_t sprung_mass() const { return total_mass - 4.0 * unsprung_mass; }

    /// Rocker pivot sits this far ahead of the sprung CoM so the static
    /// front/rear wheel loads reproduce the configured shares.
    scalar_t pivot_forward_offset() const {
        return wheelbase * (rear_static_load - front_static_load) / sprung_mass();
    }

    /// Rocker pivot height relative to the sprung CoM. Chosen so the CoM
    /// sits at com_height when struts are at free length with zero
    /// contact penetration.
    scalar_t pivot_height() const {
        return -(com_height - wheel_radius - spring_free_length);
    }

    /// Chassis inertia: solid cuboid of the sprung mass with dimensions
    /// wheelbase x wheel_track x 2*com_height.
    mat3_t chassis_inertia() const;

    /// Effective inertia of the differential rocker DOF: the four
    /// unsprung masses at the arm ends.
    scalar_t rocker_inertia() const {
        return 4.0 * unsprung_mass * arm_length * arm_length;
    }

    /// One-sided strut end-stop stiffness beyond [0, strut_max_travel()].
    scalar_t strut_endstop_stiffness() const { return 50.0 * spring_rate; }

    /// Rocker end-stop stiffness beyond +/- rocker_limit, scaled by the
    /// arm length squared to keep the units consistent.
    scalar_t rocker_endstop_stiffness() const {
        return 50.0 * spring_rate * arm_length * arm_length;
    }

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

/// The three passive suspension configurations under comparison.
enum class SuspensionMode { DR, IE, MHS };

/// IE locks the differential rocker in its horizontal position.
inline bool rocker_locked(SuspensionMode mode) { return mode == SuspensionMode::IE; }

/// DR replaces the elastic struts with rigid elements.
inline bool strut_locked(SuspensionMode mode) { return mode == SuspensionMode::DR; }

std::string to_string(SuspensionMode mode);
SuspensionMode parse_suspension_mode(const std::string& name);

/// Open-loop drive command: all wheels spin at forward_speed / wheel_radius.
struct DriveCommand {
    scalar_t forward_speed = 0.0;  ///< m/s
};

} // namespace rover
