#include <rover/state.hpp>

#include <cmath>

namespace rover {

bool RoverState::finite() const {
    auto ok = [](scalar_t v) { return std::isfinite(v); };
    for (int i = 0; i < 3; ++i) {
        if (!ok(position[i]) || !ok(linear_velocity[i]) || !ok(angular_velocity[i])) {
            return false;
        }
    }
    if (!ok(orientation.w()) || !ok(orientation.x()) || !ok(orientation.y()) ||
        !ok(orientation.z())) {
        return false;
    }
    if (!ok(rocker_angle) || !ok(rocker_rate) || !ok(time)) return false;
    for (int i = 0; i < kWheelCount; ++i) {
        if (!ok(strut_travel[i]) || !ok(strut_rate[i]) || !ok(wheel_spin[i])) return false;
    }
    return true;
}

} // namespace rover
