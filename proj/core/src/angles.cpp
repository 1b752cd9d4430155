#include "irsbf/angles.hpp"

#include <cmath>
#include <numbers>

namespace irsbf {

double normalize_angle(double radians) noexcept {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // r + 2pi can round up to exactly 2pi for tiny negative inputs
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

double wrap_to_pi(double radians) noexcept {
    double r = normalize_angle(radians);
    if (r > std::numbers::pi) {
        r -= kTwoPi;
    }
    return r;
}

double circular_distance(double a, double b) noexcept {
    return std::abs(wrap_to_pi(a - b));
}

} // namespace irsbf
