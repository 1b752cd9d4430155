#include "irsbf/types.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "irsbf/angles.hpp"
#include "irsbf/errors.hpp"

namespace irsbf {

namespace {

void check_channel(const Complex& h, const char* name, std::size_t index) {
    if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) {
        throw InstanceError(std::string(name) + std::to_string(index) + " is not finite");
    }
    if (h == Complex{}) {
        throw InstanceError(std::string(name) + std::to_string(index) +
                            " has zero magnitude (its phase is undefined)");
    }
}

} // namespace

ChannelSet::ChannelSet(Complex direct, std::vector<Complex> reflected)
    : direct_(direct), reflected_(std::move(reflected)) {
    if (reflected_.empty()) {
        throw InstanceError("channel set needs at least one reflected channel");
    }
    check_channel(direct_, "h", 0);
    for (std::size_t n = 0; n < reflected_.size(); ++n) {
        check_channel(reflected_[n], "h", n + 1);
    }
    direct_phase_ = normalize_angle(std::arg(direct_));
    phases_.reserve(reflected_.size());
    for (const Complex& h : reflected_) {
        phases_.push_back(normalize_angle(std::arg(h)));
        magnitude_sum_ += std::abs(h);
    }
}

void check_levels(int levels) {
    if (levels < 2) {
        throw ParameterError("K must be at least 2, got " + std::to_string(levels));
    }
}

PhaseConfig::PhaseConfig(int levels, std::vector<int> shifts)
    : levels_(levels), shifts_(std::move(shifts)) {
    check_levels(levels_);
    for (std::size_t n = 0; n < shifts_.size(); ++n) {
        if (shifts_[n] < 1 || shifts_[n] > levels_) {
            throw InstanceError("shift k" + std::to_string(n + 1) + " = " +
                                std::to_string(shifts_[n]) + " outside [1, " +
                                std::to_string(levels_) + "]");
        }
    }
}

PhaseConfig PhaseConfig::identity(int levels, std::size_t size) {
    return PhaseConfig(levels, std::vector<int>(size, levels));
}

double PhaseConfig::phase(std::size_t n) const {
    return kTwoPi * static_cast<double>(shifts_.at(n)) / static_cast<double>(levels_);
}

Complex unit_rotation(int k, int levels) {
    check_levels(levels);
    const int r = ((k % levels) + levels) % levels;
    if ((4 * r) % levels == 0) {
        switch ((4 * r) / levels) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(levels));
}

std::vector<Complex> rotation_table(int levels) {
    std::vector<Complex> table;
    table.reserve(static_cast<std::size_t>(levels) + 1);
    for (int k = 0; k <= levels; ++k) {
        table.push_back(unit_rotation(k, levels));
    }
    return table;
}

} // namespace irsbf
