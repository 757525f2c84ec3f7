#include <rover/dynamics.hpp>

#include <rover/errors.hpp>

#include <cmath>

namespace rover {
namespace {

// Left rockers rotate by +phi, right ones by -phi.
constexpr scalar_t kSide[kWheelCount] = {+1.0, -1.0, +1.0, -1.0};
// Front arms point forward from the pivot, rear arms backward.
constexpr scalar_t kAxle[kWheelCount] = {+1.0, +1.0, -1.0, -1.0};

vec3_t pivot_local(const RoverParameters& params, int wheel) {
    return {params.pivot_forward_offset(), kSide[wheel] * 0.5 * params.wheel_track,
            params.pivot_height()};
}

// Arm vector in the chassis frame after the rocker rotation about y.
vec3_t arm_local(const RoverParameters& params, int wheel, scalar_t phi) {
    const scalar_t alpha = kSide[wheel] * phi;
    const scalar_t len = kAxle[wheel] * params.arm_length;
    return {len * std::cos(alpha), 0.0, -len * std::sin(alpha)};
}

} // namespace

std::array<WheelKinematics, kWheelCount> attachment_points(const RoverState& state,
                                                           const RoverParameters& params) {
    std::array<WheelKinematics, kWheelCount> out;
    const quat_t& q = state.orientation;
    const vec3_t up = q * vec3_t::UnitZ();
    const vec3_t lateral = q * vec3_t::UnitY();
    for (int i = 0; i < kWheelCount; ++i) {
        const vec3_t arm_world = q * arm_local(params, i, state.rocker_angle);
        const vec3_t attach_offset = q * pivot_local(params, i) + arm_world;
        WheelKinematics& w = out[i];
        w.phi_jacobian = kSide[i] * lateral.cross(arm_world);
        w.attach_point = state.position + attach_offset;
        w.attach_velocity = state.linear_velocity + state.angular_velocity.cross(attach_offset) +
                            w.phi_jacobian * state.rocker_rate;
        const vec3_t wheel_offset = attach_offset - state.strut_travel[i] * up;
        w.wheel_center = state.position + wheel_offset;
        w.wheel_velocity = state.linear_velocity + state.angular_velocity.cross(wheel_offset) +
                           w.phi_jacobian * state.rocker_rate - up * state.strut_rate[i];
    }
    return out;
}

scalar_t suspension_force(scalar_t travel, scalar_t travel_rate,
                          const RoverParameters& params) {
    scalar_t force = params.spring_rate * (params.spring_free_length - travel) -
                     params.damping * travel_rate;
    const scalar_t stop = params.strut_endstop_stiffness();
    const scalar_t stop_damping =
        std::min(2.0 * std::sqrt(stop * params.unsprung_mass), 50.0 * params.damping);
    if (travel < 0.0) {
        force += stop * (-travel);
        if (travel_rate < 0.0) force -= stop_damping * travel_rate;
    }
    const scalar_t max_travel = params.strut_max_travel();
    if (travel > max_travel) {
        force -= stop * (travel - max_travel);
        if (travel_rate > 0.0) force -= stop_damping * travel_rate;
    }
    return force;
}

scalar_t rocker_endstop_torque(scalar_t angle, scalar_t rate,
                               const RoverParameters& params) {
    const scalar_t limit = params.rocker_limit;
    const scalar_t stiffness = params.rocker_endstop_stiffness();
    const scalar_t damping = std::min(
        2.0 * std::sqrt(stiffness * params.rocker_inertia()),
        50.0 * params.damping * params.arm_length * params.arm_length);
    if (angle > limit) {
        return -stiffness * (angle - limit) - (rate > 0.0 ? damping * rate : 0.0);
    }
    if (angle < -limit) {
        return -stiffness * (angle + limit) - (rate < 0.0 ? damping * rate : 0.0);
    }
    return 0.0;
}

RoverState step(const RoverState& state, const RoverParameters& params, SuspensionMode mode,
                const TerrainScene& scene, const DriveCommand& command,
                StepDiagnostics* diagnostics) {
    const scalar_t dt = params.timestep;
    const scalar_t m_wheel = params.unsprung_mass;
    const scalar_t m_chassis = params.sprung_mass();
    const quat_t& q = state.orientation;
    const vec3_t up = q * vec3_t::UnitZ();
    const vec3_t lateral = q * vec3_t::UnitY();
    const vec3_t wheel_gravity(0.0, 0.0, -m_wheel * params.gravity);
    const scalar_t spin_rate = command.forward_speed / params.wheel_radius;
    const bool struts_locked = strut_locked(mode);
    const bool rocker_is_locked = rocker_locked(mode);

    const auto wheels = attachment_points(state, params);

    // Contact and strut forces from the current state.
    std::array<std::optional<ContactPoint>, kWheelCount> contacts;
    std::array<vec3_t, kWheelCount> external;  // contact + wheel gravity
    std::array<scalar_t, kWheelCount> strut_force{};
    for (int i = 0; i < kWheelCount; ++i) {
        const vec3_t wheel_omega = state.angular_velocity + spin_rate * lateral;
        contacts[i] = resolve_contact(i, wheels[i].wheel_center, wheels[i].wheel_velocity,
                                      wheel_omega, scene, params);
        external[i] = wheel_gravity;
        if (contacts[i]) external[i] += contacts[i]->total_force();
        strut_force[i] = struts_locked
                             ? external[i].dot(up)
                             : suspension_force(state.strut_travel[i], state.strut_rate[i],
                                                params);
    }

    // Chassis wrench. In DR the wheel forces pass through rigidly with
    // their full line of action; otherwise the axial part is filtered by
    // the strut and only the perpendicular part transmits directly.
    vec3_t force(0.0, 0.0, -m_chassis * params.gravity);
    vec3_t torque = vec3_t::Zero();
    scalar_t pivot_torque[2] = {0.0, 0.0};  // left, right
    std::array<scalar_t, kWheelCount> attach_vertical{};
    std::array<scalar_t, kWheelCount> attach_pitch{};
    for (int i = 0; i < kWheelCount; ++i) {
        const vec3_t contact_force = contacts[i] ? contacts[i]->total_force() : vec3_t::Zero();
        const vec3_t contact_at = contacts[i] ? contacts[i]->position : wheels[i].wheel_center;
        const vec3_t pivot_world = state.position + q * pivot_local(params, i);
        // Wheel-station pitch moment about the hub: the strut axis and
        // the wheel weight pass through the center, so only the contact
        // offset contributes.
        const vec3_t contact_lever = contact_at - wheels[i].wheel_center;
        const int side = is_left_wheel(i) ? 0 : 1;
        attach_pitch[i] = contact_lever.cross(contact_force).dot(lateral);
        vec3_t transmitted;
        if (struts_locked) {
            force += contact_force + wheel_gravity;
            torque += (contact_at - state.position).cross(contact_force) +
                      (wheels[i].wheel_center - state.position).cross(wheel_gravity);
            pivot_torque[side] += ((contact_at - pivot_world).cross(contact_force) +
                                   (wheels[i].wheel_center - pivot_world).cross(wheel_gravity))
                                      .dot(lateral);
            transmitted = contact_force + wheel_gravity;
        } else {
            const vec3_t contact_perp = contact_force - contact_force.dot(up) * up;
            const vec3_t gravity_perp = wheel_gravity - wheel_gravity.dot(up) * up;
            const vec3_t axial = strut_force[i] * up;
            force += contact_perp + gravity_perp + axial;
            torque += (contact_at - state.position).cross(contact_perp) +
                      (wheels[i].wheel_center - state.position).cross(gravity_perp) +
                      (wheels[i].attach_point - state.position).cross(axial);
            pivot_torque[side] += ((contact_at - pivot_world).cross(contact_perp) +
                                   (wheels[i].wheel_center - pivot_world).cross(gravity_perp) +
                                   (wheels[i].attach_point - pivot_world).cross(axial))
                                      .dot(lateral);
            transmitted = contact_perp + gravity_perp + axial;
        }
        attach_vertical[i] = transmitted.z();
    }

    const vec3_t linear_acceleration = force / m_chassis;
    const mat3_t rotation = q.toRotationMatrix();
    const mat3_t inertia_world = rotation * params.chassis_inertia() * rotation.transpose();
    const vec3_t angular_momentum = inertia_world * state.angular_velocity;
    const vec3_t angular_acceleration =
        inertia_world.llt().solve(torque - state.angular_velocity.cross(angular_momentum));

    // Rocker DOF: generalized force of the wheel loads along the phi
    // jacobian, with the chassis acceleration fed through so the relative
    // coordinate sees the moving base.
    scalar_t phi_acceleration = 0.0;
    if (!rocker_is_locked) {
        scalar_t generalized =
            rocker_endstop_torque(state.rocker_angle, state.rocker_rate, params);
        for (int i = 0; i < kWheelCount; ++i) {
            const vec3_t offset = wheels[i].wheel_center - state.position;
            const vec3_t base_acceleration =
                linear_acceleration + angular_acceleration.cross(offset) +
                state.angular_velocity.cross(state.angular_velocity.cross(offset));
            generalized +=
                (external[i] - m_wheel * base_acceleration).dot(wheels[i].phi_jacobian);
        }
        phi_acceleration = generalized / params.rocker_inertia();
    }

    // Strut DOFs: 1-DOF unsprung mass along the chassis-up axis, driven
    // by strut minus external axial force, relative to the accelerating
    // arm end.
    std::array<scalar_t, kWheelCount> strut_acceleration{};
    if (!struts_locked) {
        for (int i = 0; i < kWheelCount; ++i) {
            const vec3_t offset = wheels[i].attach_point - state.position;
            const vec3_t arm_acceleration =
                linear_acceleration + angular_acceleration.cross(offset) +
                state.angular_velocity.cross(state.angular_velocity.cross(offset)) +
                wheels[i].phi_jacobian * phi_acceleration;
            strut_acceleration[i] =
                (strut_force[i] - external[i].dot(up)) / m_wheel + arm_acceleration.dot(up);
        }
    }

    // Semi-implicit Euler: velocities first, then positions.
    RoverState next = state;
    next.linear_velocity += dt * linear_acceleration;
    next.angular_velocity += dt * angular_acceleration;
    if (!rocker_is_locked) next.rocker_rate += dt * phi_acceleration;
    if (!struts_locked) {
        for (int i = 0; i < kWheelCount; ++i) next.strut_rate[i] += dt * strut_acceleration[i];
    }

    next.position += dt * next.linear_velocity;
    const scalar_t rotation_angle = next.angular_velocity.norm() * dt;
    if (rotation_angle > 1e-14) {
        const quat_t increment(
            Eigen::AngleAxis<scalar_t>(rotation_angle, next.angular_velocity.normalized()));
        next.orientation = increment * next.orientation;
    }
    next.orientation.normalize();
    if (!rocker_is_locked) next.rocker_angle += dt * next.rocker_rate;
    if (!struts_locked) {
        for (int i = 0; i < kWheelCount; ++i) next.strut_travel[i] += dt * next.strut_rate[i];
    }
    for (int i = 0; i < kWheelCount; ++i) next.wheel_spin[i] += dt * spin_rate;
    next.time += dt;

    if (!next.finite()) {
        throw NonFiniteState("non-finite state at t=" + std::to_string(state.time));
    }

    if (diagnostics) {
        diagnostics->contacts = contacts;
        diagnostics->strut_force = strut_force;
        diagnostics->attachment_vertical_force = attach_vertical;
        diagnostics->attachment_pitch_torque = attach_pitch;
        diagnostics->pivot_torque_left = pivot_torque[0];
        diagnostics->pivot_torque_right = pivot_torque[1];
        diagnostics->chassis_acceleration = linear_acceleration;
    }
    return next;
}

scalar_t total_energy(const RoverState& state, const RoverParameters& params,
                      const TerrainScene& scene) {
    const scalar_t m_chassis = params.sprung_mass();
    const mat3_t rotation = state.orientation.toRotationMatrix();
    const mat3_t inertia_world = rotation * params.chassis_inertia() * rotation.transpose();

    scalar_t energy = 0.5 * m_chassis * state.linear_velocity.squaredNorm() +
                      0.5 * state.angular_velocity.dot(inertia_world * state.angular_velocity) +
                      m_chassis * params.gravity * state.position.z();

    const auto wheels = attachment_points(state, params);
    const scalar_t stop = params.strut_endstop_stiffness();
    for (int i = 0; i < kWheelCount; ++i) {
        energy += 0.5 * params.unsprung_mass * wheels[i].wheel_velocity.squaredNorm();
        energy += params.unsprung_mass * params.gravity * wheels[i].wheel_center.z();
        const scalar_t stretch = params.spring_free_length - state.strut_travel[i];
        energy += 0.5 * params.spring_rate * stretch * stretch;
        if (state.strut_travel[i] < 0.0) {
            energy += 0.5 * stop * state.strut_travel[i] * state.strut_travel[i];
        }
        const scalar_t over = state.strut_travel[i] - params.strut_max_travel();
        if (over > 0.0) energy += 0.5 * stop * over * over;
        const auto contact = resolve_contact(i, wheels[i].wheel_center,
                                             wheels[i].wheel_velocity, vec3_t::Zero(), scene,
                                             params);
        if (contact) {
            energy += 0.5 * params.contact_stiffness * contact->penetration *
                      contact->penetration;
        }
    }
    const scalar_t beyond = std::abs(state.rocker_angle) - params.rocker_limit;
    if (beyond > 0.0) {
        energy += 0.5 * params.rocker_endstop_stiffness() * beyond * beyond;
    }
    return energy;
}

} // namespace rover
