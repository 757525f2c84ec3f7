#include <rover/errors.hpp>
#include <rover/metrics.hpp>

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

using namespace rover;

namespace {

SimulationTrace synthetic_trace(const std::vector<scalar_t>& accel, scalar_t dt = 1e-3) {
    SimulationTrace trace;
    trace.dt = dt;
    for (std::size_t n = 0; n < accel.size(); ++n) {
        TraceRecord rec;
        rec.state.time = (n + 1) * dt;
        rec.vertical_acceleration_g = accel[n];
        trace.records.push_back(rec);
    }
    return trace;
}

} // namespace

TEST_CASE("summarize on a constant series") {
    const SimulationTrace trace = synthetic_trace(std::vector<scalar_t>(2000, 0.25));
    const MetricsSummary m = summarize(trace);
    CHECK(m.max_acceleration == doctest::Approx(0.25));
    CHECK(m.min_acceleration == doctest::Approx(0.25));
    CHECK(m.acceleration_gap == doctest::Approx(0.0));
    CHECK(m.acceleration_sigma_mean == doctest::Approx(0.0));
}

TEST_CASE("summarize max, min, and gap arithmetic") {
    const SimulationTrace trace = synthetic_trace({0.0, 2.0, -1.0});
    const MetricsSummary m = summarize(trace);
    CHECK(m.max_acceleration == doctest::Approx(2.0));
    CHECK(m.min_acceleration == doctest::Approx(-1.0));
    CHECK(m.acceleration_gap == doctest::Approx(3.0));
}

TEST_CASE("summarize rejects an empty trace") {
    SimulationTrace trace;
    CHECK_THROWS_AS(summarize(trace), EmptyTrace);
}

TEST_CASE("force and torque maxima take absolute peaks over wheels and time") {
    SimulationTrace trace = synthetic_trace({0.0, 0.0, 0.0});
    trace.records[0].attachment_vertical_force = {1.0, -7.5, 2.0, 0.0};
    trace.records[1].attachment_vertical_force = {4.0, 0.0, 0.0, 6.0};
    trace.records[0].attachment_pitch_torque = {0.1, -3.25, 0.0, 0.0};
    trace.records[2].attachment_pitch_torque = {2.5, 0.0, 0.0, 1.0};
    const MetricsSummary m = summarize(trace);
    CHECK(m.max_vertical_load == doctest::Approx(7.5));
    CHECK(m.max_pitch_torque == doctest::Approx(3.25));
}

TEST_CASE("sigma over sliding windows of a square wave") {
    // 1 s windows over a +/-1 square wave of period 0.2 s: every window
    // sees half highs and half lows, sigma = 1.
    std::vector<scalar_t> accel(3000);
    for (std::size_t n = 0; n < accel.size(); ++n) {
        accel[n] = (n / 100) % 2 == 0 ? 1.0 : -1.0;
    }
    const MetricsSummary m = summarize(synthetic_trace(accel));
    CHECK(m.acceleration_sigma_mean == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("max and min are chunking-invariant") {
    std::vector<scalar_t> accel;
    for (int n = 0; n < 5000; ++n) {
        accel.push_back(std::sin(0.013 * n) + 0.3 * std::sin(0.17 * n));
    }
    const SimulationTrace whole = synthetic_trace(accel);
    const MetricsSummary all = summarize(whole);

    const std::vector<scalar_t> first_half(accel.begin(), accel.begin() + 2500);
    const std::vector<scalar_t> second_half(accel.begin() + 2500, accel.end());
    const MetricsSummary a = summarize(synthetic_trace(first_half));
    const MetricsSummary b = summarize(synthetic_trace(second_half));
    CHECK(std::max(a.max_acceleration, b.max_acceleration) ==
          doctest::Approx(all.max_acceleration));
    CHECK(std::min(a.min_acceleration, b.min_acceleration) ==
          doctest::Approx(all.min_acceleration));
}

TEST_CASE("reduction rate reproduces the reference rows") {
    CHECK(reduction_rate(std::array<scalar_t, 3>{8633.0, 549.0, 341.1}) == -96);
    CHECK(reduction_rate(std::array<scalar_t, 3>{88.3, 63.4, 62.0}) == -30);
    CHECK(reduction_rate(std::array<scalar_t, 3>{4.36, 3.56, 2.02}) == -54);
    CHECK(reduction_rate(std::array<scalar_t, 3>{7076.5, 917.0, 337.7}) == -95);
    CHECK(reduction_rate(std::array<scalar_t, 3>{156.7, 98.0, 58.1}) == -63);
    CHECK(reduction_rate(std::array<scalar_t, 3>{6.07, 5.04, 2.34}) == -61);
    CHECK(reduction_rate(std::array<scalar_t, 3>{58.4, 49.9, 31.2}) == -47);
    CHECK(reduction_rate(std::array<scalar_t, 3>{2.79, 2.69, 1.57}) == -44);
    CHECK(reduction_rate(std::array<scalar_t, 3>{5.0, 5.0, 5.0}) == 0);
}

TEST_CASE("reduction rate stays within [-100, 0] for non-negative input") {
    std::array<scalar_t, 4> values{3.0, 0.5, 12.0, 7.0};
    const int rate = reduction_rate(values);
    CHECK(rate <= 0);
    CHECK(rate >= -100);
}

TEST_CASE("reduction rate rejects degenerate input") {
    CHECK_THROWS_AS(reduction_rate(std::array<scalar_t, 1>{1.0}), DegenerateInput);
    CHECK_THROWS_AS(reduction_rate(std::array<scalar_t, 2>{0.0, 0.0}), DegenerateInput);
}

TEST_CASE("average reduction over scenarios") {
    // Single scenario, reference rock accelerations DR vs MHS.
    CHECK(average_reduction(std::array<scalar_t, 1>{4.36}, std::array<scalar_t, 1>{2.02}) ==
          doctest::Approx(-54.0));
    // Two scenarios averaging -50% and -30%.
    CHECK(average_reduction(std::array<scalar_t, 2>{10.0, 10.0},
                            std::array<scalar_t, 2>{5.0, 7.0}) == doctest::Approx(-40.0));
    // Identical summaries.
    CHECK(average_reduction(std::array<scalar_t, 2>{3.0, 4.0},
                            std::array<scalar_t, 2>{3.0, 4.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(average_reduction(std::array<scalar_t, 2>{1.0, 2.0},
                                      std::array<scalar_t, 1>{1.0}),
                    IncompleteGrid);
}
