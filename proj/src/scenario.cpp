#include <rover/scenario.hpp>

#include <rover/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace rover {
namespace {

constexpr scalar_t kQuarterPi = 0.7853981633974483;

scalar_t pitch_magnitude(const quat_t& q) {
    const vec3_t forward = q * vec3_t::UnitX();
    return std::asin(std::clamp(std::abs(forward.z()), 0.0, 1.0));
}

scalar_t roll_magnitude(const quat_t& q) {
    const vec3_t lateral = q * vec3_t::UnitY();
    return std::asin(std::clamp(std::abs(lateral.z()), 0.0, 1.0));
}

// Online outcome detector; the pure classifiers replay a stored trace
// through the same logic so re-classification reproduces the verdict.
struct OutcomeMonitor {
    ScenarioKind kind;
    scalar_t pass_x = 0.0;
    scalar_t ramp_start_x = 0.0;
    scalar_t dt = 1e-3;

    std::array<bool, kWheelCount> passed{};
    scalar_t stall_time = 0.0;
    std::array<long, kWheelCount> climb_steps{};
    std::array<long, kWheelCount> contact_steps{};

    std::optional<ScenarioOutcome> update(const TraceRecord& rec) {
        using Verdict = ScenarioOutcome::Verdict;
        if (pitch_magnitude(rec.state.orientation) > kTipoverAngle ||
            roll_magnitude(rec.state.orientation) > kTipoverAngle) {
            return ScenarioOutcome{Verdict::Failure, "tip-over", rec.state.time};
        }

        bool all_passed = true;
        for (int i = 0; i < kWheelCount; ++i) {
            if (rec.wheel_x[i] >= pass_x) passed[i] = true;
            all_passed = all_passed && passed[i];
        }

        if (kind == ScenarioKind::Slope) {
            // Each wheel's climb segment covers the steps it spends on
            // the incline itself.
            for (int i = 0; i < kWheelCount; ++i) {
                if (rec.wheel_x[i] >= ramp_start_x && !passed[i]) {
                    ++climb_steps[i];
                    if (rec.in_contact[i]) ++contact_steps[i];
                }
            }
        }

        if (all_passed && kind != ScenarioKind::FlatRun) {
            if (kind == ScenarioKind::Slope) {
                return slope_verdict(rec.state.time);
            }
            return ScenarioOutcome{Verdict::Success, "all wheels cleared the obstacle",
                                   rec.state.time};
        }

        if (rec.state.linear_velocity.x() < kStallSpeed) {
            stall_time += dt;
            if (stall_time >= kStallDuration) {
                return ScenarioOutcome{Verdict::Failure, "stall", rec.state.time};
            }
        } else {
            stall_time = 0.0;
        }
        return std::nullopt;
    }

    // Failure is reserved for not reaching the crest; a crest reached
    // with degraded wheel contact is the partial outcome.
    ScenarioOutcome slope_verdict(scalar_t time) const {
        using Verdict = ScenarioOutcome::Verdict;
        std::array<scalar_t, kWheelCount> fraction;
        for (int i = 0; i < kWheelCount; ++i) {
            fraction[i] = climb_steps[i] > 0
                              ? static_cast<scalar_t>(contact_steps[i]) / climb_steps[i]
                              : 1.0;
        }
        const bool fronts_held = fraction[kFrontLeft] >= kContactFractionThreshold &&
                                 fraction[kFrontRight] >= kContactFractionThreshold;
        const bool rears_held = fraction[kRearLeft] >= kContactFractionThreshold &&
                                fraction[kRearRight] >= kContactFractionThreshold;
        if (fronts_held && rears_held) {
            return {Verdict::Success, "crest reached with full wheel contact", time};
        }
        if (rears_held) {
            return {Verdict::SemiSuccess, "crest reached; only the rear wheels held contact",
                    time};
        }
        return {Verdict::SemiSuccess, "crest reached without sustained wheel contact", time};
    }

    ScenarioOutcome finalize(scalar_t end_time) const {
        using Verdict = ScenarioOutcome::Verdict;
        switch (kind) {
        case ScenarioKind::FlatRun:
            return {Verdict::Success, "completed", end_time};
        case ScenarioKind::Slope:
            return {Verdict::Failure, "timeout before reaching the crest", end_time};
        default:
            if (passed[kFrontLeft] && passed[kFrontRight]) {
                return {Verdict::SemiSuccess, "only the front wheels overcame the obstacle",
                        end_time};
            }
            return {Verdict::Failure, "timeout before clearing the obstacle", end_time};
        }
    }
};

ScenarioOutcome replay(const SimulationTrace& trace, OutcomeMonitor monitor) {
    monitor.dt = trace.dt;
    for (const TraceRecord& rec : trace.records) {
        if (auto decided = monitor.update(rec)) return *decided;
    }
    return monitor.finalize(trace.duration());
}

// Coordinates this far outside the mechanism's range mean the integrator
// has lost the solution even though nothing is NaN yet.
bool diverged(const RoverState& state, const RoverParameters& params) {
    if (state.position.cwiseAbs().maxCoeff() > 1e3) return true;
    if (state.linear_velocity.cwiseAbs().maxCoeff() > 1e3) return true;
    if (state.angular_velocity.cwiseAbs().maxCoeff() > 1e4) return true;
    if (std::abs(state.rocker_angle) > 10.0 * params.rocker_limit + 1.0) return true;
    const scalar_t strut_bound = 10.0 * params.strut_max_travel() + 1.0;
    for (int i = 0; i < kWheelCount; ++i) {
        if (std::abs(state.strut_travel[i]) > strut_bound) return true;
    }
    return false;
}

} // namespace

std::string to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::Step: return "step";
    case ScenarioKind::Rock: return "rock";
    case ScenarioKind::Outcrop: return "outcrop";
    case ScenarioKind::Slope: return "slope";
    case ScenarioKind::FlatRun: return "flat";
    }
    return "flat";
}

ScenarioKind parse_scenario_kind(const std::string& name) {
    if (name == "step") return ScenarioKind::Step;
    if (name == "rock") return ScenarioKind::Rock;
    if (name == "outcrop") return ScenarioKind::Outcrop;
    if (name == "slope") return ScenarioKind::Slope;
    if (name == "flat") return ScenarioKind::FlatRun;
    throw InvalidSpec("unknown scenario kind '" + name + "'");
}

std::string to_string(ScenarioOutcome::Verdict verdict) {
    switch (verdict) {
    case ScenarioOutcome::Verdict::Success: return "success";
    case ScenarioOutcome::Verdict::SemiSuccess: return "semi";
    case ScenarioOutcome::Verdict::Failure: return "failure";
    }
    return "failure";
}

ScenarioOutcome::Verdict parse_verdict(const std::string& name) {
    if (name == "success") return ScenarioOutcome::Verdict::Success;
    if (name == "semi") return ScenarioOutcome::Verdict::SemiSuccess;
    if (name == "failure") return ScenarioOutcome::Verdict::Failure;
    throw InvalidSpec("unknown verdict '" + name + "'");
}

BuiltScenario build_scenario(const ScenarioSpec& spec, const SimConfig& config) {
    if (spec.kind != ScenarioKind::FlatRun &&
        (spec.speed < 0.05 - 1e-12 || spec.speed > 1.0 + 1e-12)) {
        throw InvalidSpec("speed must lie in [0.05, 1.0] m/s");
    }
    if (spec.kind == ScenarioKind::FlatRun && !(spec.speed > 0.0)) {
        throw InvalidSpec("speed must be positive");
    }

    BuiltScenario built;
    built.params = config.rover;
    built.params.gravity = spec.gravity;
    built.params.validate();
    const scalar_t radius = built.params.wheel_radius;
    const scalar_t track_y = 0.5 * built.params.wheel_track;

    built.scene.soil_friction = config.soil_friction;
    switch (spec.kind) {
    case ScenarioKind::Step: {
        if (!(spec.parameter > 0.0) || spec.parameter > 0.5) {
            throw InvalidSpec("step height must lie in (0, 0.5] m");
        }
        built.scene.steps.push_back({0.0, spec.parameter, config.obstacle_friction});
        built.pass_x = 0.0 + radius;
        break;
    }
    case ScenarioKind::Rock: {
        if (!(spec.parameter > 0.0) || spec.parameter > 0.5) {
            throw InvalidSpec("rock radius must lie in (0, 0.5] m");
        }
        HemisphereFeature rock;
        rock.center = vec2_t(spec.parameter, track_y);
        rock.radius = spec.parameter;
        rock.friction = config.obstacle_friction;
        built.scene.hemispheres.push_back(rock);
        built.pass_x = 2.0 * spec.parameter + radius;
        break;
    }
    case ScenarioKind::Outcrop: {
        if (!(spec.parameter > 0.0) || spec.parameter > 0.5) {
            throw InvalidSpec("outcrop max height must lie in (0, 0.5] m");
        }
        OutcropFeature outcrop;
        outcrop.start_x = 0.0;
        outcrop.length = config.sweep.outcrop_length;
        outcrop.max_height = spec.parameter;
        outcrop.seed = spec.seed;
        outcrop.center_y = track_y;
        outcrop.width = config.sweep.outcrop_width;
        outcrop.friction = config.obstacle_friction;
        built.scene.outcrops.push_back(outcrop);
        built.pass_x = outcrop.length + radius;
        break;
    }
    case ScenarioKind::Slope: {
        if (!(spec.parameter > 0.0) || spec.parameter > kQuarterPi + 1e-9) {
            throw InvalidSpec("slope angle must lie in (0, 45] degrees");
        }
        SlopeFeature slope;
        slope.start_x = 0.0;
        slope.length = config.sweep.slope_length;
        slope.angle = spec.parameter;
        slope.friction = config.soil_friction;
        built.scene.slopes.push_back(slope);
        built.ramp_start_x = 0.0;
        built.pass_x = slope.crest_x() + radius;
        break;
    }
    case ScenarioKind::FlatRun:
        built.pass_x = std::numeric_limits<scalar_t>::infinity();
        break;
    }
    built.scene.finalize();

    built.initial_state = equilibrium_state(built.params, spec.mode);
    const auto wheels = attachment_points(built.initial_state, built.params);
    scalar_t front_x = wheels[kFrontLeft].wheel_center.x();
    scalar_t rear_x = wheels[kRearLeft].wheel_center.x();
    const scalar_t shift = -kRunupDistance - front_x;
    built.initial_state.position.x() += shift;
    rear_x += shift;
    built.initial_state.linear_velocity = vec3_t(spec.speed, 0.0, 0.0);

    if (spec.kind == ScenarioKind::FlatRun) {
        built.effective_timeout = spec.timeout;
    } else {
        const scalar_t distance = built.pass_x - rear_x + 2.0 * radius;
        built.effective_timeout = std::max(spec.timeout, 1.5 * distance / spec.speed);
    }
    return built;
}

ScenarioRun run_scenario(const ScenarioSpec& spec, const SimConfig& config) {
    const BuiltScenario built = build_scenario(spec, config);
    const RoverParameters& params = built.params;
    const DriveCommand command{spec.speed};

    ScenarioRun run;
    run.trace.dt = params.timestep;
    const long max_steps =
        static_cast<long>(std::ceil(built.effective_timeout / params.timestep));
    run.trace.records.reserve(std::min<long>(max_steps, 200000));

    OutcomeMonitor monitor;
    monitor.kind = spec.kind;
    monitor.pass_x = built.pass_x;
    monitor.ramp_start_x = built.ramp_start_x;
    monitor.dt = params.timestep;

    RoverState state = built.initial_state;
    bool decided = false;
    for (long n = 0; n < max_steps && !decided; ++n) {
        StepDiagnostics diag;
        RoverState next;
        try {
            next = step(state, params, spec.mode, built.scene, command, &diag);
        } catch (const NonFiniteState&) {
            run.trace.aborted_non_finite = true;
            run.outcome = {ScenarioOutcome::Verdict::Failure, "numerical instability",
                           state.time};
            decided = true;
            break;
        }
        if (diverged(next, params)) {
            run.trace.aborted_non_finite = true;
            run.outcome = {ScenarioOutcome::Verdict::Failure, "numerical instability",
                           next.time};
            decided = true;
            break;
        }

        TraceRecord rec;
        rec.state = next;
        for (int i = 0; i < kWheelCount; ++i) {
            if (diag.contacts[i]) {
                rec.normal_force[i] = diag.contacts[i]->normal_force;
                rec.in_contact[i] = diag.contacts[i]->normal_force > 0.0;
            }
        }
        rec.strut_force = diag.strut_force;
        rec.attachment_vertical_force = diag.attachment_vertical_force;
        rec.attachment_pitch_torque = diag.attachment_pitch_torque;
        rec.pivot_torque_left = diag.pivot_torque_left;
        rec.pivot_torque_right = diag.pivot_torque_right;
        rec.vertical_acceleration_g = diag.chassis_acceleration.z() / kStandardGravity;
        const auto wheels = attachment_points(next, params);
        for (int i = 0; i < kWheelCount; ++i) rec.wheel_x[i] = wheels[i].wheel_center.x();
        run.trace.records.push_back(rec);

        if (auto outcome = monitor.update(rec)) {
            run.outcome = *outcome;
            decided = true;
        }
        state = next;
    }
    if (!decided) run.outcome = monitor.finalize(run.trace.duration());
    return run;
}

ScenarioOutcome classify_step_outcome(const SimulationTrace& trace, scalar_t pass_x) {
    OutcomeMonitor monitor;
    monitor.kind = ScenarioKind::Step;
    monitor.pass_x = pass_x;
    return replay(trace, monitor);
}

ScenarioOutcome classify_slope_outcome(const SimulationTrace& trace, scalar_t ramp_start_x,
                                       scalar_t crest_pass_x) {
    OutcomeMonitor monitor;
    monitor.kind = ScenarioKind::Slope;
    monitor.pass_x = crest_pass_x;
    monitor.ramp_start_x = ramp_start_x;
    return replay(trace, monitor);
}

ScenarioOutcome classify_flat_outcome(const SimulationTrace& trace) {
    OutcomeMonitor monitor;
    monitor.kind = ScenarioKind::FlatRun;
    monitor.pass_x = std::numeric_limits<scalar_t>::infinity();
    return replay(trace, monitor);
}

} // namespace rover
