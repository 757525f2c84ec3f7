#include <rover/statics.hpp>

#include <rover/dynamics.hpp>
#include <rover/errors.hpp>
#include <rover/terrain.hpp>

#include <cmath>

namespace rover {
namespace {

using vec4_t = Eigen::Matrix<scalar_t, 4, 1>;
using mat4_t = Eigen::Matrix<scalar_t, 4, 4>;

RoverState make_state(const vec4_t& dof) {
    RoverState state;
    state.position = vec3_t(0.0, 0.0, dof[0]);
    state.orientation = quat_t(Eigen::AngleAxis<scalar_t>(dof[1], vec3_t::UnitY()));
    state.strut_travel = {dof[2], dof[2], dof[3], dof[3]};
    return state;
}

// Residual generalized accelerations of the flat-ground static balance
// at zero velocity: chassis heave, pitch, and the two axle strut DOFs.
vec4_t static_residual(const RoverParameters& params, SuspensionMode mode,
                       const TerrainScene& scene, const vec4_t& dof) {
    const RoverState state = make_state(dof);
    const RoverState next = step(state, params, mode, scene, DriveCommand{0.0});
    const scalar_t dt = params.timestep;
    return vec4_t(next.linear_velocity.z() / dt, next.angular_velocity.y() / dt,
                  next.strut_rate[kFrontLeft] / dt, next.strut_rate[kRearLeft] / dt);
}

// Newton polish of the analytic seed; the closed form neglects the
// first-order strut-axis tilt, which leaves a small pitch torque.
vec4_t refine_equilibrium(const RoverParameters& params, SuspensionMode mode,
                          const vec4_t& seed) {
    TerrainScene scene;
    scene.finalize();
    const bool struts = !strut_locked(mode);
    const int dofs = struts ? 4 : 2;

    vec4_t dof = seed;
    for (int iteration = 0; iteration < 8; ++iteration) {
        const vec4_t residual = static_residual(params, mode, scene, dof);
        if (residual.head(dofs).cwiseAbs().maxCoeff() < 1e-10) break;
        mat4_t jacobian = mat4_t::Identity();
        const scalar_t h = 1e-8;
        for (int j = 0; j < dofs; ++j) {
            vec4_t perturbed = dof;
            perturbed[j] += h;
            jacobian.col(j) = (static_residual(params, mode, scene, perturbed) - residual) / h;
        }
        dof.head(dofs) -= jacobian.topLeftCorner(dofs, dofs)
                              .fullPivLu()
                              .solve(residual.head(dofs))
                              .eval();
    }
    return dof;
}

} // namespace

StaticEquilibrium static_equilibrium(const RoverParameters& params, SuspensionMode mode) {
    (void)mode;  // all three configurations share the same flat-ground balance
    StaticEquilibrium eq;
    const scalar_t g = params.gravity;
    eq.front_wheel_load = params.front_static_load * g;
    eq.rear_wheel_load = params.rear_static_load * g;
    eq.front_strut_force = eq.front_wheel_load - params.unsprung_mass * g;
    eq.rear_strut_force = eq.rear_wheel_load - params.unsprung_mass * g;
    eq.front_travel = params.spring_free_length - eq.front_strut_force / params.spring_rate;
    eq.rear_travel = params.spring_free_length - eq.rear_strut_force / params.spring_rate;
    const scalar_t max_travel = params.strut_max_travel();
    if (eq.front_travel < 0.0 || eq.front_travel > max_travel || eq.rear_travel < 0.0 ||
        eq.rear_travel > max_travel) {
        throw NoEquilibrium("static deflection outside the strut travel range");
    }
    eq.front_penetration = eq.front_wheel_load / params.contact_stiffness;
    eq.rear_penetration = eq.rear_wheel_load / params.contact_stiffness;

    const scalar_t attach_front =
        params.wheel_radius - eq.front_penetration + eq.front_travel;
    const scalar_t attach_rear = params.wheel_radius - eq.rear_penetration + eq.rear_travel;
    eq.chassis_pitch = std::asin((attach_rear - attach_front) / (2.0 * params.arm_length));
    const scalar_t pivot_height_world = 0.5 * (attach_front + attach_rear);
    eq.chassis_height = pivot_height_world +
                        params.pivot_forward_offset() * std::sin(eq.chassis_pitch) -
                        params.pivot_height() * std::cos(eq.chassis_pitch);
    eq.rocker_angle = 0.0;
    return eq;
}

RoverState equilibrium_state(const RoverParameters& params, SuspensionMode mode) {
    const StaticEquilibrium eq = static_equilibrium(params, mode);
    vec4_t dof(eq.chassis_height, eq.chassis_pitch, eq.front_travel, eq.rear_travel);
    if (params.gravity > 0.0) {
        if (strut_locked(mode)) {
            // Struts lock at the elastic equilibrium travels; only the
            // pose is free to rebalance.
            dof = refine_equilibrium(params, SuspensionMode::MHS, dof);
            dof = refine_equilibrium(params, mode, dof);
        } else {
            dof = refine_equilibrium(params, mode, dof);
        }
    }
    return make_state(dof);
}

TipoverAngles static_tipover_angles(const RoverParameters& params) {
    TipoverAngles angles;
    angles.longitudinal = std::atan2(0.5 * params.wheelbase, params.com_height);
    angles.lateral = std::atan2(0.5 * params.wheel_track, params.com_height);
    return angles;
}

} // namespace rover
