#include <rover/parameters.hpp>

#include <rover/errors.hpp>

#include <cmath>

namespace rover {

mat3_t RoverParameters::chassis_inertia() const {
    const scalar_t m = sprung_mass();
    const scalar_t a = wheelbase;
    const scalar_t b = wheel_track;
    const scalar_t c = 2.0 * com_height;
    mat3_t inertia = mat3_t::Zero();
    inertia(0, 0) = m / 12.0 * (b * b + c * c);
    inertia(1, 1) = m / 12.0 * (a * a + c * c);
    inertia(2, 2) = m / 12.0 * (a * a + b * b);
    return inertia;
}

void RoverParameters::validate() const {
    auto require_positive = [](scalar_t value, const char* key) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ValidationError(std::string(key) + " must be strictly positive");
        }
    };
    require_positive(wheel_radius, "wheel_radius");
    require_positive(wheelbase, "wheelbase");
    require_positive(arm_length, "arm_length");
    require_positive(wheel_track, "wheel_track");
    require_positive(com_height, "com_height");
    require_positive(spring_rate, "spring_rate");
    require_positive(spring_free_length, "spring_free_length");
    require_positive(total_mass, "total_mass");
    require_positive(front_static_load, "front_static_load");
    require_positive(rear_static_load, "rear_static_load");
    require_positive(unsprung_mass, "unsprung_mass");
    require_positive(rocker_limit, "rocker_limit");
    require_positive(contact_stiffness, "contact_stiffness");
    require_positive(friction_regularization, "friction_regularization");
    require_positive(timestep, "timestep");
    if (damping < 0.0 || !std::isfinite(damping)) {
        throw ValidationError("damping must be non-negative");
    }
    if (contact_damping < 0.0 || !std::isfinite(contact_damping)) {
        throw ValidationError("contact_damping must be non-negative");
    }
    if (gravity < 0.0 || !std::isfinite(gravity)) {
        throw ValidationError("gravity must be non-negative");
    }
    if (4.0 * unsprung_mass >= total_mass) {
        throw ValidationError("unsprung_mass: four wheels must weigh less than total_mass");
    }
    const scalar_t load_sum = 2.0 * (front_static_load + rear_static_load);
    if (std::abs(load_sum - total_mass) > 1e-6 * total_mass) {
        throw ValidationError(
            "front_static_load/rear_static_load: 2*(front+rear) must equal total_mass");
    }
}

std::string to_string(SuspensionMode mode) {
    switch (mode) {
    case SuspensionMode::DR: return "DR";
    case SuspensionMode::IE: return "IE";
    case SuspensionMode::MHS: return "MHS";
    }
    return "MHS";
}

SuspensionMode parse_suspension_mode(const std::string& name) {
    if (name == "DR") return SuspensionMode::DR;
    if (name == "IE") return SuspensionMode::IE;
    if (name == "MHS") return SuspensionMode::MHS;
    throw ValidationError("suspension: unknown mode '" + name + "' (expected DR, IE, or MHS)");
}

} // namespace rover
