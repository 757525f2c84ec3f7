// Scenario construction, execution, and outcome classification.
#pragma once

#include <rover/config.hpp>
#include <rover/dynamics.hpp>
#include <rover/statics.hpp>
#include <rover/trace.hpp>

#include <cstdint>
#include <string>

namespace rover {

enum class ScenarioKind { Step, Rock, Outcrop, Slope, FlatRun };

std::string to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(const std::string& name);

/// One simulation cell. `parameter` is the step height [m], rock radius
/// [m], outcrop max height [m], or slope angle [rad]; unused for FlatRun.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::FlatRun;
    scalar_t parameter = 0.0;
    scalar_t speed = 0.5;            ///< m/s, commanded; grids cover [0.05, 1.0]
    SuspensionMode mode = SuspensionMode::MHS;
    scalar_t gravity = 1.625;        ///< m/s^2
    scalar_t timeout = 30.0;         ///< s; scaled up automatically for slow runs
    std::uint32_t seed = 1;
};

struct ScenarioOutcome {
    enum class Verdict { Success, SemiSuccess, Failure };
    Verdict verdict = Verdict::Failure;
    std::string reason;
    scalar_t termination_time = 0.0;
};

std::string to_string(ScenarioOutcome::Verdict verdict);
ScenarioOutcome::Verdict parse_verdict(const std::string& name);

// Classification thresholds behind the success / semi-success / failure
// verdicts.
inline constexpr scalar_t kStallSpeed = 0.01;            ///< m/s forward
inline constexpr scalar_t kStallDuration = 2.0;          ///< s continuous
inline constexpr scalar_t kTipoverAngle = 1.0471975511965976;  ///< rad (60 deg)
inline constexpr scalar_t kContactFractionThreshold = 0.95;
inline constexpr scalar_t kRunupDistance = 1.0;          ///< m before the feature

/// Scene plus consistent initial state: rover at static equilibrium with
/// its front wheels kRunupDistance before the feature, already moving at
/// the commanded speed.
struct BuiltScenario {
    TerrainScene scene;
    RoverState initial_state;
    RoverParameters params;         ///< config rover with the scenario gravity applied
    scalar_t feature_start_x = 0.0; ///< leading edge (always 0 by construction)
    scalar_t pass_x = 0.0;          ///< wheel-center x that counts as "past"
    scalar_t ramp_start_x = 0.0;    ///< slope only
    scalar_t effective_timeout = 30.0;
};

/// Throws InvalidSpec for out-of-range geometry or speed.
BuiltScenario build_scenario(const ScenarioSpec& spec, const SimConfig& config);

struct ScenarioRun {
    SimulationTrace trace;
    ScenarioOutcome outcome;
};

/// Runs the dynamics until the outcome is decided or the timeout hits;
/// the trace is sampled at every timestep. A NonFiniteState abort maps
/// to Failure("numerical instability"). Deterministic.
ScenarioRun run_scenario(const ScenarioSpec& spec, const SimConfig& config);

/// Pure trace classifiers; re-running them on a stored trace reproduces
/// the verdict. Used for Step, Rock, and Outcrop scenarios.
ScenarioOutcome classify_step_outcome(const SimulationTrace& trace, scalar_t pass_x);

/// Slope rule: Success when the crest is reached with every wheel's
/// contact fraction >= kContactFractionThreshold over the climb segment,
/// SemiSuccess when only both rear wheels satisfy it, Failure otherwise.
ScenarioOutcome classify_slope_outcome(const SimulationTrace& trace, scalar_t ramp_start_x,
                                       scalar_t crest_pass_x);

ScenarioOutcome classify_flat_outcome(const SimulationTrace& trace);

} // namespace rover
