#include <rover/checks.hpp>

#include <rover/dynamics.hpp>
#include <rover/errors.hpp>
#include <rover/scenario.hpp>
#include <rover/statics.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>

namespace rover {

scalar_t damped_oscillator_position(scalar_t mass, scalar_t stiffness, scalar_t damping,
                                    scalar_t initial_offset, scalar_t time) {
    const scalar_t omega = std::sqrt(stiffness / mass);
    const scalar_t zeta = damping / (2.0 * std::sqrt(stiffness * mass));
    if (zeta >= 1.0) {
        throw DegenerateInput("damped_oscillator_position: not underdamped");
    }
    const scalar_t omega_d = omega * std::sqrt(1.0 - zeta * zeta);
    return std::exp(-zeta * omega * time) *
           (initial_offset * std::cos(omega_d * time) +
            (zeta * omega * initial_offset / omega_d) * std::sin(omega_d * time));
}

QuarterCarCheck check_quarter_car(scalar_t mass, scalar_t stiffness, scalar_t damping,
                                  scalar_t initial_offset, scalar_t dt, scalar_t duration,
                                  scalar_t tolerance) {
    RoverParameters params;
    params.spring_rate = stiffness;
    params.damping = damping;

    QuarterCarCheck check;
    check.tolerance = tolerance;
    // Same update rule as the full integrator: velocity first, then
    // position, with forces from the strut law.
    scalar_t travel = params.spring_free_length + initial_offset;
    scalar_t rate = 0.0;
    const long steps = static_cast<long>(std::llround(duration / dt));
    for (long n = 1; n <= steps; ++n) {
        const scalar_t acceleration = suspension_force(travel, rate, params) / mass;
        rate += dt * acceleration;
        travel += dt * rate;
        const scalar_t expected =
            damped_oscillator_position(mass, stiffness, damping, initial_offset, n * dt);
        const scalar_t error = std::abs((travel - params.spring_free_length) - expected);
        check.max_error_fraction =
            std::max(check.max_error_fraction, error / std::abs(initial_offset));
    }
    check.pass = check.max_error_fraction < tolerance;
    return check;
}

EnergyLedgerCheck check_energy_ledger(RoverParameters params, scalar_t drop_height,
                                      scalar_t duration, scalar_t tolerance) {
    params.damping = 0.0;
    params.contact_damping = 0.0;
    params.timestep = 1e-3;  // the ledger is specified at this rate

    TerrainScene scene;
    scene.soil_friction = 0.0;
    scene.finalize();

    RoverState state = equilibrium_state(params, SuspensionMode::MHS);
    state.position.z() += drop_height;

    EnergyLedgerCheck check;
    check.tolerance = tolerance;
    const scalar_t initial = total_energy(state, params, scene);
    const long steps = static_cast<long>(std::llround(duration / params.timestep));
    scalar_t final_energy = initial;
    for (long n = 0; n < steps; ++n) {
        state = step(state, params, SuspensionMode::MHS, scene, DriveCommand{0.0});
        final_energy = total_energy(state, params, scene);
        check.max_excursion_fraction =
            std::max(check.max_excursion_fraction,
                     std::abs(final_energy - initial) / std::abs(initial));
    }
    check.drift_fraction = std::abs(final_energy - initial) / std::abs(initial);
    check.pass = check.drift_fraction < tolerance;
    return check;
}

StaticLoadCheck check_static_loads(RoverParameters params, SuspensionMode mode) {
    TerrainScene scene;
    scene.finalize();

    RoverState state = equilibrium_state(params, mode);
    StaticLoadCheck check;
    check.expected_total = params.total_mass * params.gravity;
    check.expected_load = {params.front_static_load * params.gravity,
                           params.front_static_load * params.gravity,
                           params.rear_static_load * params.gravity,
                           params.rear_static_load * params.gravity};

    // Settle, then average the normal forces over the last half second.
    const long settle_steps = static_cast<long>(std::llround(2.5 / params.timestep));
    const long average_steps = static_cast<long>(std::llround(0.5 / params.timestep));
    StepDiagnostics diag;
    for (long n = 0; n < settle_steps; ++n) {
        state = step(state, params, mode, scene, DriveCommand{0.0});
    }
    std::array<scalar_t, kWheelCount> sums{};
    for (long n = 0; n < average_steps; ++n) {
        state = step(state, params, mode, scene, DriveCommand{0.0}, &diag);
        for (int i = 0; i < kWheelCount; ++i) {
            if (diag.contacts[i]) sums[i] += diag.contacts[i]->normal_force;
        }
    }
    check.total_normal_force = 0.0;
    for (int i = 0; i < kWheelCount; ++i) {
        check.wheel_load[i] = sums[i] / average_steps;
        check.total_normal_force += check.wheel_load[i];
    }
    bool ok = std::abs(check.total_normal_force - check.expected_total) <
              check.total_tolerance * check.expected_total;
    for (int i = 0; i < kWheelCount; ++i) {
        ok = ok && std::abs(check.wheel_load[i] - check.expected_load[i]) <
                       check.wheel_tolerance * check.expected_load[i];
    }
    check.pass = ok;
    return check;
}

DeterminismCheck check_determinism(const SimConfig& config) {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::Rock;
    spec.parameter = config.sweep.rock_radius;
    spec.speed = 0.5;
    spec.mode = SuspensionMode::MHS;
    spec.gravity = config.rover.gravity;
    spec.timeout = 10.0;
    spec.seed = config.seed;

    const ScenarioRun first = run_scenario(spec, config);
    const ScenarioRun second = run_scenario(spec, config);

    DeterminismCheck check;
    if (first.trace.records.size() != second.trace.records.size()) return check;
    for (std::size_t n = 0; n < first.trace.records.size(); ++n) {
        const RoverState& a = first.trace.records[n].state;
        const RoverState& b = second.trace.records[n].state;
        if (std::memcmp(a.position.data(), b.position.data(), sizeof(scalar_t) * 3) != 0 ||
            std::memcmp(a.linear_velocity.data(), b.linear_velocity.data(),
                        sizeof(scalar_t) * 3) != 0 ||
            a.orientation.coeffs() != b.orientation.coeffs() ||
            a.rocker_angle != b.rocker_angle || a.strut_travel != b.strut_travel) {
            return check;
        }
    }
    check.pass = first.outcome.verdict == second.outcome.verdict;
    return check;
}

} // namespace rover
