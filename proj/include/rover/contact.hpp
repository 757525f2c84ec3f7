// Penalty contact between spherical wheels and the analytic terrain,
// with regularized Coulomb friction.
#pragma once

#include <rover/parameters.hpp>
#include <rover/terrain.hpp>
#include <rover/types.hpp>

#include <optional>

namespace rover {

struct ContactPoint {
    int wheel_id = 0;
    vec3_t position = vec3_t::Zero();       ///< world contact point
    vec3_t normal = vec3_t::UnitZ();        ///< unit, points from surface into wheel
    scalar_t penetration = 0.0;             ///< m, > 0 when touching
    scalar_t penetration_rate = 0.0;        ///< m/s, > 0 when deepening
    scalar_t normal_force = 0.0;            ///< N, >= 0
    vec3_t friction_force = vec3_t::Zero(); ///< N, tangential
    scalar_t friction_coefficient = 0.0;    ///< mu used at this point

    vec3_t total_force() const { return normal_force * normal + friction_force; }
};

/// Deepest-penetration contact of one wheel sphere against the scene, or
/// nullopt when clear of the ground. The wheel angular velocity must
/// include the commanded spin so the slip velocity at the rim is right.
std::optional<ContactPoint> resolve_contact(int wheel_id, const vec3_t& wheel_center,
                                            const vec3_t& center_velocity,
                                            const vec3_t& wheel_angular_velocity,
                                            const TerrainScene& scene,
                                            const RoverParameters& params);

} // namespace rover
