#include <rover/metrics.hpp>

#include <rover/errors.hpp>

#include <algorithm>
#include <cmath>

namespace rover {

MetricsSummary summarize(const SimulationTrace& trace, scalar_t sigma_window) {
    if (trace.records.empty()) throw EmptyTrace("summarize: empty trace");

    MetricsSummary summary;
    summary.max_acceleration = trace.records.front().vertical_acceleration_g;
    summary.min_acceleration = summary.max_acceleration;
    for (const TraceRecord& rec : trace.records) {
        for (int i = 0; i < kWheelCount; ++i) {
            summary.max_vertical_load =
                std::max(summary.max_vertical_load, std::abs(rec.attachment_vertical_force[i]));
        }
        for (int i = 0; i < kWheelCount; ++i) {
            summary.max_pitch_torque = std::max(summary.max_pitch_torque,
                                                std::abs(rec.attachment_pitch_torque[i]));
        }
        summary.max_acceleration = std::max(summary.max_acceleration,
                                            rec.vertical_acceleration_g);
        summary.min_acceleration = std::min(summary.min_acceleration,
                                            rec.vertical_acceleration_g);
    }
    summary.acceleration_gap = summary.max_acceleration - summary.min_acceleration;

    // Sliding-window sigma via prefix sums; a trace shorter than one
    // window is treated as a single window.
    const std::size_t n = trace.records.size();
    std::size_t window = trace.dt > 0.0
                             ? static_cast<std::size_t>(std::lround(sigma_window / trace.dt))
                             : n;
    window = std::clamp<std::size_t>(window, 1, n);
    std::vector<scalar_t> sum(n + 1, 0.0);
    std::vector<scalar_t> sum_sq(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const scalar_t a = trace.records[i].vertical_acceleration_g;
        sum[i + 1] = sum[i] + a;
        sum_sq[i + 1] = sum_sq[i] + a * a;
    }
    scalar_t sigma_total = 0.0;
    const std::size_t positions = n - window + 1;
    for (std::size_t i = 0; i < positions; ++i) {
        const scalar_t mean = (sum[i + window] - sum[i]) / window;
        const scalar_t mean_sq = (sum_sq[i + window] - sum_sq[i]) / window;
        sigma_total += std::sqrt(std::max(0.0, mean_sq - mean * mean));
    }
    summary.acceleration_sigma_mean = sigma_total / positions;
    return summary;
}

int reduction_rate(std::span<const scalar_t> values) {
    if (values.size() < 2) throw DegenerateInput("reduction_rate: need at least two values");
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    if (*max_it == 0.0) throw DegenerateInput("reduction_rate: max value is zero");
    return static_cast<int>(std::lround((*min_it - *max_it) / *max_it * 100.0));
}

scalar_t average_reduction(std::span<const scalar_t> from_values,
                           std::span<const scalar_t> to_values) {
    if (from_values.empty() || from_values.size() != to_values.size()) {
        throw IncompleteGrid("average_reduction: mismatched or empty value sets");
    }
    scalar_t total = 0.0;
    for (std::size_t i = 0; i < from_values.size(); ++i) {
        if (from_values[i] == 0.0) {
            throw DegenerateInput("average_reduction: zero baseline value");
        }
        total += std::lround((to_values[i] - from_values[i]) / from_values[i] * 100.0);
    }
    return total / static_cast<scalar_t>(from_values.size());
}

} // namespace rover
