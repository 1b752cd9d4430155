#pragma once

#include <numbers>

namespace irsbf {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle to [0, 2pi).
double normalize_angle(double radians) noexcept;

/// Maps any finite angle to (-pi, pi].
double wrap_to_pi(double radians) noexcept;

/// Length of the shortest arc between two directions, in [0, pi].
double circular_distance(double a, double b) noexcept;

} // namespace irsbf
