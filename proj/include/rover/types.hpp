// Shared scalar and linear-algebra aliases.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace rover {

using scalar_t = double;
using vec2_t = Eigen::Matrix<scalar_t, 2, 1>;
using vec3_t = Eigen::Matrix<scalar_t, 3, 1>;
using mat3_t = Eigen::Matrix<scalar_t, 3, 3>;
using quat_t = Eigen::Quaternion<scalar_t>;

/// Wheel indexing used for every per-wheel array in the library.
enum WheelId : int { kFrontLeft = 0, kFrontRight = 1, kRearLeft = 2, kRearRight = 3 };
inline constexpr int kWheelCount = 4;
inline constexpr const char* kWheelNames[kWheelCount] = {"FL", "FR", "RL", "RR"};

inline constexpr bool is_front_wheel(int wheel) { return wheel == kFrontLeft || wheel == kFrontRight; }
inline constexpr bool is_left_wheel(int wheel) { return wheel == kFrontLeft || wheel == kRearLeft; }

/// Reported accelerations use g-units of 9.81 m/s^2 regardless of the
/// simulated gravity field.
inline constexpr scalar_t kStandardGravity = 9.81;

} // namespace rover
